#include "hypwave/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "hypwave/errors.hpp"
#include "hypwave/quad.hpp"

namespace hypwave {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTailRelTol = 1e-6;

double sinh_pow(double r, int n) { return std::pow(std::sinh(r), n - 1); }

// composite Gauss nodes over [0, R] sized for oscillations up to lambda_max
PanelGrid radial_quadrature(double R, double lambda_max) {
  const int npanels =
      std::max(24, static_cast<int>(std::ceil(R * (lambda_max + 2.0) / 3.0)));
  return composite_gauss(0.0, R, npanels, 8);
}

using Fn1 = std::function<cplx(double)>;

// D^m h with D = -(1/sinh s) d/ds, nested finite differences on a callable.
// D^k h is even in s for even h, so evaluation points inside the axis clamp
// can be pushed out to the clamp radius.
cplx iterated_lowering(const Fn1& h, double s, int m, double step) {
  if (m == 0) return h(s);
  if (std::abs(s) < 1e-4) s = 1e-4;
  auto inner = [&](double t) { return iterated_lowering(h, t, m - 1, step); };
  return -fd_derivative_c(inner, s, 1, step) / std::sinh(s);
}

// unnormalized inverse Abel value at r (constant C_A left out)
cplx abel_raw_at(const SpaceParams& sp, const Fn1& h, double r, double step,
                 double s_max) {
  if (sp.n % 2 == 1) return iterated_lowering(h, r, (sp.n - 1) / 2, step);
  const int m = sp.n / 2;
  // (2/sqrt(pi)) int_0^{w_max} [D^m h](s(w)) dw, s(w) = acosh(cosh r + w^2)
  auto integrand = [&](double w) {
    const double s = std::acosh(std::cosh(r) + w * w);
    return iterated_lowering(h, s, m, step);
  };
  const double wmax = std::sqrt(std::cosh(s_max) - std::cosh(r));
  cplx total(0.0, 0.0);
  double lo = 0.0;
  for (double hi = 2.0; lo < wmax; hi *= 2.0) {
    const double edge = std::min(hi, wmax);
    const cplx piece = adaptive_gk(integrand, lo, edge, 1e-12, 1e-10);
    total += piece;
    lo = edge;
    if (std::abs(piece) < 1e-13 * (std::abs(total) + 1e-300) && lo > 8.0) break;
  }
  return 2.0 / std::sqrt(kPi) * total;
}

struct AbelEval {
  const SpaceParams& sp;
  const Fn1& h;
  double step;
  double s_max;
  // small-r values come from a quadratic in r^2 through three interior
  // points, since the lowering operator is 0/0 at the origin
  cplx operator()(double r) const {
    if (r >= 0.02) return abel_raw_at(sp, h, r, step, s_max);
    const double r1 = 0.02, r2 = 0.04, r3 = 0.06;
    const cplx v1 = abel_raw_at(sp, h, r1, step, s_max);
    const cplx v2 = abel_raw_at(sp, h, r2, step, s_max);
    const cplx v3 = abel_raw_at(sp, h, r3, step, s_max);
    const double x = r * r, x1 = r1 * r1, x2 = r2 * r2, x3 = r3 * r3;
    const cplx l1 = v1 * ((x - x2) * (x - x3)) / ((x1 - x2) * (x1 - x3));
    const cplx l2 = v2 * ((x - x1) * (x - x3)) / ((x2 - x1) * (x2 - x3));
    const cplx l3 = v3 * ((x - x1) * (x - x2)) / ((x3 - x1) * (x3 - x2));
    return l1 + l2 + l3;
  }
};

Calibration compute_calibration(int n) {
  const SpaceParams sp = SpaceParams::make(n);
  Calibration cal;
  cal.n = n;
  cal.C_H = 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);

  // reference Gaussian, high-resolution grids
  const double R = 6.5, lambda_max = 14.0;
  const PanelGrid rq = composite_gauss(0.0, R, 40, 8);
  const SpectralGrid sg = make_spectral_grid(sp, lambda_max, 56, 8);
  auto g = [](double r) { return std::exp(-r * r); };

  const size_t nr = rq.nodes.size(), nl = sg.lambdas.size();
  const std::vector<cplx> Phi = phi_matrix(sp, rq.nodes, sg.lambdas);
  std::vector<double> gv(nr), sh(nr);
  for (size_t i = 0; i < nr; ++i) {
    gv[i] = g(rq.nodes[i]);
    sh[i] = sinh_pow(rq.nodes[i], n);
  }
  std::vector<double> Hg(nl, 0.0);
  parallel_for(nl, [&](size_t j) {
    double acc = 0.0;
    for (size_t i = 0; i < nr; ++i)
      acc += rq.weights[i] * gv[i] * sh[i] * Phi[i * nl + j].real();
    Hg[j] = cal.C_H * acc;
  });

  double u0 = 0.0, ip = 0.0, l2 = 0.0;
  for (size_t j = 0; j < nl; ++j) {
    u0 += sg.weights[j] * Hg[j] * sg.plancherel[j];
    ip += sg.weights[j] * Hg[j] * Hg[j] * sg.plancherel[j];
  }
  for (size_t i = 0; i < nr; ++i) l2 += rq.weights[i] * gv[i] * gv[i] * sh[i];
  l2 *= cal.C_H;
  cal.C_inv = 1.0 / u0;
  cal.C_P = l2 / ip;

  // Abel constant from the factorization H^{-1} = A^{-1} o F^{-1}: push the
  // transform of the Gaussian back through the 1D cosine inversion and fit
  // the remaining constant against the Gaussian itself.
  auto h = [&](double s) {
    double acc = 0.0;
    for (size_t j = 0; j < nl; ++j)
      acc += sg.weights[j] * Hg[j] * std::cos(sg.lambdas[j] * s);
    return cplx(acc / kPi, 0.0);
  };
  const Fn1 hfn = h;
  const AbelEval raw{sp, hfn, 0.01, 12.0};
  double num = 0.0, den = 0.0;
  for (double r = 0.4; r <= 2.2; r += 0.2) {
    const double d = raw(r).real();
    num += d * g(r);
    den += d * d;
  }
  cal.C_A = num / den;
  return cal;
}

const Calibration& cached_calibration(int n) {
  static std::map<int, Calibration> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_calibration(n)).first;
  return it->second;
}

double spectral_tail_estimate(const SpectralFunction& F) {
  const size_t m = F.grid.lambdas.size();
  std::vector<double> xs, mags;
  for (size_t j = m - std::max<size_t>(4, m / 5); j < m; ++j) {
    xs.push_back(F.grid.lambdas[j]);
    mags.push_back(std::abs(F.values[j]) * F.grid.plancherel[j]);
  }
  double edge = 0.0;
  for (double v : mags) edge = std::max(edge, v);
  if (edge == 0.0) return 0.0;
  // fit log v = a - b lambda on the trailing window
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (mags[i] <= 0.0) continue;
    const double y = std::log(mags[i]);
    sx += xs[i];
    sy += y;
    sxx += xs[i] * xs[i];
    sxy += xs[i] * y;
    ++cnt;
  }
  if (cnt < 3) return edge;  // cannot fit: charge the edge value
  const double det = cnt * sxx - sx * sx;
  const double b = -(cnt * sxy - sx * sy) / det;
  if (b <= 1e-12) return std::numeric_limits<double>::infinity();
  return edge / b;
}

}  // namespace

const Calibration& calibration(const SpaceParams& sp) {
  return cached_calibration(sp.n);
}

std::vector<cplx> phi_matrix(const SpaceParams& sp, const std::vector<double>& rs,
                             const std::vector<double>& las) {
  std::vector<cplx> out(rs.size() * las.size());
  const size_t nl = las.size();
  parallel_for(out.size(), [&](size_t idx) {
    const size_t i = idx / nl, j = idx % nl;
    out[idx] = phi_auto(sp, las[j], rs[i]);
  });
  return out;
}

SpectralFunction spherical_transform(const SpaceParams& sp,
                                     const RadialFunction& f,
                                     const SpectralGrid& grid) {
  f.validate();
  const Calibration& cal = calibration(sp);

  const RadialSpline spline(f);
  const double R = f.grid.back();
  const double lambda_max = grid.lambdas.empty() ? 0.0 : grid.lambdas.back();
  const PanelGrid rq = radial_quadrature(R, lambda_max);

  const size_t nr = rq.nodes.size(), nl = grid.lambdas.size();
  std::vector<cplx> fv(nr);
  std::vector<double> sh(nr);
  double mass = 0.0;
  for (size_t i = 0; i < nr; ++i) {
    fv[i] = spline(rq.nodes[i]);
    sh[i] = sinh_pow(rq.nodes[i], sp.n);
    mass += rq.weights[i] * std::abs(fv[i]) * sh[i];
  }
  const double tail = radial_tail_estimate(sp, f);
  if (!(tail <= kTailRelTol * (mass + 1e-300)))
    throw DomainError(
        "spherical transform: estimated tail beyond the sample grid exceeds "
        "tolerance; extend the grid or fix the decay class");

  const std::vector<cplx> Phi = phi_matrix(sp, rq.nodes, grid.lambdas);
  SpectralFunction out;
  out.grid = grid;
  out.values.assign(nl, cplx(0.0, 0.0));
  parallel_for(nl, [&](size_t j) {
    cplx acc(0.0, 0.0);
    for (size_t i = 0; i < nr; ++i)
      acc += rq.weights[i] * fv[i] * sh[i] * Phi[i * nl + j];
    out.values[j] = cal.C_H * acc;
  });
  return out;
}

RadialFunction inverse_spherical_transform(const SpaceParams& sp,
                                           const SpectralFunction& F,
                                           const std::vector<double>& rgrid) {
  F.validate();
  if (rgrid.empty()) throw DomainError("inverse transform: empty output grid");
  const Calibration& cal = calibration(sp);

  double scale = 0.0;
  const size_t nl = F.grid.lambdas.size();
  for (size_t j = 0; j < nl; ++j)
    scale += F.grid.weights[j] * std::abs(F.values[j]) * F.grid.plancherel[j];
  const double tail = spectral_tail_estimate(F);
  if (!(tail <= kTailRelTol * (scale + 1e-300)))
    throw DomainError(
        "inverse spherical transform: spectral samples do not decay enough "
        "for tail control; extend the spectral grid");

  const std::vector<cplx> Phi = phi_matrix(sp, rgrid, F.grid.lambdas);
  RadialFunction out;
  out.grid = rgrid;
  out.values.assign(rgrid.size(), cplx(0.0, 0.0));
  parallel_for(rgrid.size(), [&](size_t i) {
    cplx acc(0.0, 0.0);
    for (size_t j = 0; j < nl; ++j)
      acc += F.grid.weights[j] * F.values[j] * F.grid.plancherel[j] *
             Phi[i * nl + j];
    out.values[i] = cal.C_inv * acc;
  });
  out.decay = infer_decay_class(out.grid, out.values);
  out.validate();
  return out;
}

RadialFunction inverse_cosine_transform(const SpectralFunction& F,
                                        const std::vector<double>& snodes) {
  F.validate();
  RadialFunction out;
  out.grid = snodes;
  out.values.assign(snodes.size(), cplx(0.0, 0.0));
  const size_t nl = F.grid.lambdas.size();
  parallel_for(snodes.size(), [&](size_t i) {
    cplx acc(0.0, 0.0);
    for (size_t j = 0; j < nl; ++j)
      acc += F.grid.weights[j] * F.values[j] *
             std::cos(F.grid.lambdas[j] * snodes[i]);
    out.values[i] = acc / kPi;
  });
  out.decay = infer_decay_class(out.grid, out.values);
  out.validate();
  return out;
}

RadialFunction abel_inverse(const SpaceParams& sp, const RadialFunction& g,
                            const std::vector<double>& rgrid) {
  g.validate();
  const Calibration& cal = calibration(sp);

  // mirrored spline: the nested stencils reach below 0, and interpolating
  // through reflected nodes keeps the axis genuinely even (a plain even
  // extension of a one-sided spline has a slope crease at 0 that the
  // lowering operator amplifies)
  std::vector<double> sgrid;
  std::vector<double> sre, sim;
  bool has_im = false;
  for (size_t i = g.grid.size(); i-- > 1;) {
    sgrid.push_back(-g.grid[i]);
    sre.push_back(g.values[i].real());
    sim.push_back(g.values[i].imag());
  }
  for (size_t i = 0; i < g.grid.size(); ++i) {
    sgrid.push_back(g.grid[i]);
    sre.push_back(g.values[i].real());
    sim.push_back(g.values[i].imag());
    if (g.values[i].imag() != 0.0) has_im = true;
  }
  const CubicSpline re_sp(sgrid, sre);
  const CubicSpline im_sp = has_im ? CubicSpline(sgrid, sim) : CubicSpline();
  const Fn1 h = [&](double s) {
    return has_im ? cplx(re_sp(s), im_sp(s)) : cplx(re_sp(s), 0.0);
  };

  double med = 0.0;
  {
    std::vector<double> gaps;
    for (size_t i = 1; i < g.grid.size(); ++i)
      gaps.push_back(g.grid[i] - g.grid[i - 1]);
    std::sort(gaps.begin(), gaps.end());
    med = gaps[gaps.size() / 2];
  }
  const double step = std::clamp(3.0 * med, 0.01, 0.08);
  // keep every stencil node strictly inside the data range
  const double s_max = g.grid.back() - 0.5;
  if (s_max <= 0.5)
    throw DomainError("abel inversion: data range too short");

  std::vector<double> rs = rgrid;
  if (rs.empty()) {
    rs.push_back(0.0);
    for (double r : g.grid)
      if (r > 0.0 && r <= s_max - 0.3) rs.push_back(r);
  }
  for (double r : rs)
    if (r > s_max - 0.1)
      throw DomainError("abel inversion: output radius beyond the data range");

  const AbelEval raw{sp, h, step, s_max};
  const AbelEval fine{sp, h, 0.5 * step, s_max};
  double ref = 0.0;
  for (const cplx& v : g.values) ref = std::max(ref, std::abs(v));

  RadialFunction out;
  out.grid = rs;
  out.values.assign(rs.size(), cplx(0.0, 0.0));
  std::vector<char> noisy(rs.size(), 0);
  parallel_for(rs.size(), [&](size_t i) {
    // step-stability gate at every node: a kink in the data shows up as a
    // step-dependent iterated derivative
    const cplx v1 = raw(rs[i]);
    const cplx v2 = fine(rs[i]);
    if (std::abs(v1 - v2) > 1e-3 * (std::abs(v2) + 1e-5 * ref)) noisy[i] = 1;
    out.values[i] = cal.C_A * v2;
  });
  for (char flag : noisy)
    if (flag)
      throw DomainError(
          "abel inversion: finite-difference noise exceeds tolerance; the "
          "input is not smooth enough");
  out.decay = infer_decay_class(out.grid, out.values);
  out.validate();
  return out;
}

double radial_l2(const SpaceParams& sp, const RadialFunction& f) {
  f.validate();
  const Calibration& cal = calibration(sp);
  const RadialSpline spline(f);
  const PanelGrid rq = composite_gauss(0.0, f.grid.back(),
                                       std::max<int>(24, f.grid.size() / 8), 6);
  double acc = 0.0;
  for (size_t i = 0; i < rq.nodes.size(); ++i) {
    const double m = std::abs(spline(rq.nodes[i]));
    acc += rq.weights[i] * m * m * sinh_pow(rq.nodes[i], sp.n);
  }
  return std::sqrt(cal.C_H * acc);
}

}  // namespace hypwave
