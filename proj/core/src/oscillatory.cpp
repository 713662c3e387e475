#include "hypwave/oscillatory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <queue>

#include "hypwave/errors.hpp"
#include "hypwave/quad.hpp"

namespace hypwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

// mu_j(theta) = int_0^1 t^j e^{i theta t} dt, j = 0..3. Forward recursion is
// stable once |theta| is not small; below that a short Taylor series.
std::array<cplx, 4> filon_moments(double theta) {
  std::array<cplx, 4> mu;
  if (std::abs(theta) < 0.5) {
    const cplx it(0.0, theta);
    for (int j = 0; j < 4; ++j) {
      cplx sum(0.0, 0.0), pw(1.0, 0.0);
      double fact = 1.0;
      for (int m = 0; m < 48; ++m) {
        const cplx term = pw / (fact * (j + m + 1.0));
        sum += term;
        if (std::abs(term) < 1e-19) break;
        pw *= it;
        fact *= m + 1.0;
      }
      mu[j] = sum;
    }
  } else {
    const cplx itheta(0.0, theta);
    const cplx e = std::exp(itheta);
    mu[0] = (e - cplx(1.0, 0.0)) / itheta;
    for (int j = 1; j < 4; ++j)
      mu[j] = (e - static_cast<double>(j) * mu[j - 1]) / itheta;
  }
  return mu;
}

using Fn = std::function<cplx(double)>;

// One Filon panel: cubic through 4 equispaced samples, oscillation exact.
cplx filon_panel(const Fn& f, double a, double h, double x) {
  const cplx v0 = f(a);
  const cplx v1 = f(a + h / 3.0);
  const cplx v2 = f(a + 2.0 * h / 3.0);
  const cplx v3 = f(a + h);
  const cplx c0 = v0;
  const cplx c1 = -5.5 * v0 + 9.0 * v1 - 4.5 * v2 + v3;
  const cplx c2 = 9.0 * v0 - 22.5 * v1 + 18.0 * v2 - 4.5 * v3;
  const cplx c3 = -4.5 * v0 + 13.5 * v1 - 13.5 * v2 + 4.5 * v3;
  const auto mu = filon_moments(h * x);
  const cplx phase = std::exp(cplx(0.0, a * x));
  return h * phase * (c0 * mu[0] + c1 * mu[1] + c2 * mu[2] + c3 * mu[3]);
}

struct Panel {
  double a, h;
  cplx value;    // refined (two half-panel) estimate
  double err;    // |whole - halves|
  double scale;  // h * |f|, the rounding floor of this panel
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel make_panel(const Fn& f, double a, double h, double x) {
  const cplx whole = filon_panel(f, a, h, x);
  const cplx halves =
      filon_panel(f, a, 0.5 * h, x) + filon_panel(f, a + 0.5 * h, 0.5 * h, x);
  const double scale =
      h * (std::abs(f(a + h / 6.0)) + std::abs(f(a + 5.0 * h / 6.0)));
  return Panel{a, h, halves, std::abs(whole - halves), scale};
}

// below this the panel error is rounding noise, refinement cannot shrink it
bool at_noise_floor(const Panel& p) { return p.err <= 4e-16 * p.scale; }

// Adaptive Filon integration over consecutive [breaks[i], breaks[i+1]].
cplx filon_integrate(const Fn& f, const std::vector<double>& breaks, double x,
                     double tol) {
  std::priority_queue<Panel> q;
  cplx total(0.0, 0.0);
  double err = 0.0;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    Panel p = make_panel(f, breaks[i], breaks[i + 1] - breaks[i], x);
    total += p.value;
    err += p.err;
    if (!at_noise_floor(p)) q.push(p);
  }
  int budget = 400000;
  while (err > tol && !q.empty()) {
    if (--budget < 0)
      throw NumericError(
          "oscillatory quadrature: panel refinement stalled (err=" +
          std::to_string(err) + ", tol=" + std::to_string(tol) +
          ", queued=" + std::to_string(q.size()) +
          ", top_err=" + std::to_string(q.top().err) +
          ", top_scale=" + std::to_string(q.top().scale) + ")");
    Panel p = q.top();
    q.pop();
    total -= p.value;
    err -= p.err;
    Panel l = make_panel(f, p.a, 0.5 * p.h, x);
    Panel r = make_panel(f, p.a + 0.5 * p.h, 0.5 * p.h, x);
    total += l.value + r.value;
    err += l.err + r.err;
    if (!at_noise_floor(l)) q.push(l);
    if (!at_noise_floor(r)) q.push(r);
  }
  return total;
}

cplx eval_head(const SymbolHead& hd, double la) {
  return hd.coeff * std::exp(hd.power * std::log(la)) *
         smooth_step(la / hd.cut - 1.0);
}

// int_L^inf la^p e^{i la x} d la by rotating the contour into the decaying
// half-plane; the integrand becomes (L + i u sgn/|x|)^p e^{-u} with u >= 0.
cplx power_tail(cplx coeff, cplx p, double L, double x, double tol) {
  if (x == 0.0) {
    if (p.real() >= -1.0)
      throw DomainError("oscillatory tail diverges at x = 0");
    return -coeff * std::exp((p + 1.0) * std::log(L)) / (p + 1.0);
  }
  const double sgn = (x > 0.0) ? 1.0 : -1.0;
  const double ax = std::abs(x);
  auto g = [&](double u) {
    return std::exp(p * std::log(cplx(L, sgn * u / ax)) - u);
  };
  const cplx integral = adaptive_gk(g, 0.0, 50.0, tol * ax, 1e-12);
  return coeff * std::exp(cplx(0.0, L * x)) * cplx(0.0, sgn / ax) * integral;
}

struct TailInfo {
  cplx boundary;      // the two explicit integration-by-parts terms
  double remainder;   // bound on what was dropped
  bool usable = false;
};

// Tail of f beyond L, two routes:
//  - plain: bound int_L^inf |f| from the fitted local power of |f|; no
//    boundary terms, independent of x;
//  - two integrations by parts at L, dropping |x|^{-2} int_L^inf |f''|.
// The plain route wins when |x| L is small (near the light cone the x^{-2}
// factor is ruinous even though the tail converges absolutely). `order` is
// the declared decay power of f, the backstop when the sampled values sit
// on the evaluation noise floor and the measured slope is garbage.
TailInfo ibp_tail(const Fn& f, const Fn& fd, double L, double x,
                  double order) {
  const cplx fL = f(L);
  const double a1 = std::abs(fL), a2 = std::abs(f(2.0 * L));

  TailInfo plain;
  plain.boundary = cplx(0.0, 0.0);
  if (a1 == 0.0) {
    plain.remainder = 0.0;
    plain.usable = true;
  } else {
    const double qa = std::log2(a2 / a1);
    if (qa < -1.05) {
      plain.remainder = a1 * L / (-qa - 1.0);
      plain.usable = true;
    } else if (order < -1.05) {
      plain.remainder = 2.0 * std::max(a1, a2) * L / (-order - 1.0);
      plain.usable = true;
    }
  }
  if (x == 0.0) return plain;

  TailInfo t;
  auto d2 = [&](double la) {
    return fd_derivative_c(fd, la, 1, 1e-2 * la);
  };
  const cplx fdL = fd(L);
  const double g1 = std::abs(d2(L)), g2 = std::abs(d2(2.0 * L));
  const cplx ix(0.0, x);
  const cplx phase = std::exp(cplx(0.0, L * x));
  t.boundary = -fL * phase / ix + fdL * phase / (ix * ix);
  if (g1 == 0.0) {
    t.remainder = 0.0;
    t.usable = true;
  } else {
    const double q = std::log2(g2 / g1);
    if (q < -1.05) {
      t.remainder = g1 * L / (-q - 1.0) / (x * x);
      t.usable = true;
    }
  }
  if (plain.usable && (!t.usable || plain.remainder < t.remainder))
    return plain;
  return t;
}

cplx osc_halfline(const SymbolSpec& a, double x, double tol);

cplx osc_compact(const SymbolSpec& a, double x, double tol) {
  const double S = a.support_radius;
  if (!(S > 0.0)) throw DomainError("compact symbol needs a support radius");
  // graded start: chop [0, eps] whose |a| mass is below tol/4
  double eps = 0.0;
  if (a.order < 0.0) {
    if (a.order <= -1.0)
      throw DomainError("compact symbol of order <= -1 is not integrable");
    double c0 = 0.0;
    for (double la : {S * 1e-6, S * 1e-4, S * 1e-2})
      c0 = std::max(c0, std::abs(a.evaluate(la)) / std::pow(la, a.order));
    if (c0 > 0.0) {
      eps = std::pow(tol * (a.order + 1.0) / (4.0 * c0), 1.0 / (a.order + 1.0));
      eps = std::min(eps, 1e-3 * S);
    }
  }
  std::vector<double> breaks;
  if (eps > 0.0) {
    // geometric panels from the graded start all the way up
    for (double b = eps; b < 0.9 * S; b *= 2.0) breaks.push_back(b);
  } else {
    for (double b = 0.0; b < 0.9 * S; b += 0.25 * S) breaks.push_back(b);
  }
  breaks.push_back(S);
  return filon_integrate(a.evaluate, breaks, x, 0.5 * tol);
}

cplx osc_halfline(const SymbolSpec& a, double x, double tol) {
  const Fn& f = a.evaluate;
  Fn fd = a.derivative;
  if (!fd)
    fd = [&f](double la) { return fd_derivative_c(f, la, 1, 1e-2 * la); };

  const bool has_head = a.head.has_value();
  Fn rem = f;
  Fn rem_d = fd;
  if (has_head) {
    const SymbolHead hd = *a.head;
    rem = [f, hd](double la) { return f(la) - eval_head(hd, la); };
    rem_d = [rem](double la) { return fd_derivative_c(rem, la, 1, 1e-2 * la); };
  }

  double L = has_head ? std::max(4.0, 2.5 * a.head->cut) : 4.0;
  std::vector<double> breaks = {0.0, 0.5, 1.0, 2.0};
  while (breaks.back() < L) breaks.push_back(std::min(2.0 * breaks.back(), L));
  if (breaks.back() != L) breaks.push_back(L);

  TailInfo tail;
  while (true) {
    tail = ibp_tail(rem, rem_d, L, x, a.order);
    if (std::getenv("HYPWAVE_OSC_DEBUG"))
      std::fprintf(stderr,
                   "osc_halfline L=%g usable=%d rem_est=%g |rem(L)|=%g tol=%g\n",
                   L, tail.usable ? 1 : 0, tail.remainder,
                   std::abs(rem(L)), tol);
    if (tail.usable && tail.remainder < 0.25 * tol) break;
    const double Lnew = 2.0 * L;
    if (Lnew > 1e15)
      throw NumericError("oscillatory quadrature: tail did not converge");
    breaks.push_back(Lnew);
    L = Lnew;
  }

  cplx out = filon_integrate(f, breaks, x, 0.5 * tol) + tail.boundary;
  if (has_head) {
    // beyond L the cutoff is 1, so the head tail is an exact power integral
    out += power_tail(a.head->coeff, a.head->power, L, x, 0.25 * tol);
  }
  return out;
}

}  // namespace

cplx oscillatory_fourier(const SymbolSpec& a, double x, double tol) {
  if (!a.evaluate) throw DomainError("symbol has no evaluator");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  switch (a.support) {
    case SymbolSupport::kCompactHomogeneous:
      return osc_compact(a, x, tol);
    case SymbolSupport::kInhomogeneousHalfline:
      return osc_halfline(a, x, tol);
    case SymbolSupport::kInhomogeneousFullline: {
      SymbolSpec neg;
      const Fn f = a.evaluate;
      neg.evaluate = [f](double la) { return f(-la); };
      if (a.derivative) {
        const Fn fd = a.derivative;
        neg.derivative = [fd](double la) { return -fd(-la); };
      }
      neg.order = a.order;
      neg.support = SymbolSupport::kInhomogeneousHalfline;
      SymbolSpec pos = a;
      pos.support = SymbolSupport::kInhomogeneousHalfline;
      // declared heads live on the positive half-line (chi_inf support)
      return osc_halfline(pos, x, 0.5 * tol) +
             osc_halfline(neg, -x, 0.5 * tol);
    }
  }
  throw DomainError("unknown symbol support");
}

DecayReport symbol_decay_check(const SymbolSpec& a, const std::vector<double>& xs,
                               double tol) {
  if (xs.size() < 2) throw DomainError("decay check needs at least two points");
  double lo = std::abs(xs[0]), hi = std::abs(xs[0]);
  for (double x : xs) {
    if (x == 0.0) throw DomainError("decay check: x = 0 not allowed");
    lo = std::min(lo, std::abs(x));
    hi = std::max(hi, std::abs(x));
  }
  if (hi < 10.0 * lo)
    throw DomainError("decay check: sample points must span a decade");

  DecayReport rep;
  std::vector<double> axs, mags;
  for (double x : xs) {
    const double m = std::abs(oscillatory_fourier(a, x, tol));
    rep.max_abs = std::max(rep.max_abs, m);
    if (m > 0.0) {
      axs.push_back(std::abs(x));
      mags.push_back(m);
    }
  }
  if (axs.size() >= 2) rep.fit = fit_loglog(axs, mags);

  if (a.head.has_value() || a.order <= -1.0) {
    rep.origin_checked = true;
    SymbolSpec probe = a;
    if (a.head.has_value()) {
      const int m = static_cast<int>(std::lround(-1.0 - a.head->power.real()));
      if (m > 0) {
        rep.origin_derivative = m;
        const Fn f = a.evaluate;
        probe.evaluate = [f, m](double la) {
          return f(la) * std::pow(cplx(0.0, la), m);
        };
        probe.derivative = nullptr;
        probe.order = a.order + m;
        SymbolHead hd = *a.head;
        const cplx im = std::pow(cplx(0.0, 1.0), m);
        hd.coeff *= im;
        hd.power += static_cast<double>(m);
        probe.head = hd;
      }
    }
    for (double ax : {0.5, 0.2, 0.05, 0.01, 1e-3}) {
      for (double s : {1.0, -1.0}) {
        rep.origin_sup = std::max(
            rep.origin_sup, std::abs(oscillatory_fourier(probe, s * ax, tol)));
      }
    }
  }
  return rep;
}

}  // namespace hypwave
