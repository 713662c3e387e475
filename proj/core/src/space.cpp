#include "hypwave/space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "hypwave/errors.hpp"
#include "hypwave/quad.hpp"
#include "hypwave/util.hpp"

namespace hypwave {

namespace {
constexpr double kPi = std::numbers::pi;
}

SpaceParams SpaceParams::make(int n, double rho_tilde) {
  if (n < 2) throw DomainError("SpaceParams: dimension must be >= 2");
  SpaceParams sp;
  sp.n = n;
  sp.rho = 0.5 * (n - 1);
  sp.rho_tilde = rho_tilde < 0.0 ? sp.rho + 1.0 : rho_tilde;
  if (!(sp.rho_tilde > sp.rho))
    throw DomainError("SpaceParams: rho_tilde must exceed rho");
  return sp;
}

cplx c_inverse(const SpaceParams& sp, cplx lambda) {
  const double rho = sp.rho;
  const cplx il = cplx(0.0, 1.0) * lambda;
  // pole of Gamma(i lambda + rho) means a genuine singularity of c^{-1}
  const cplx z = il + rho;
  if (std::abs(z.imag()) < 1e-12) {
    const double zr = z.real();
    if (zr < 0.5 && std::abs(zr - std::round(zr)) < 1e-12 && std::round(zr) <= 0.0)
      throw DomainError("c_inverse: Gamma(i lambda + rho) pole at this lambda");
  }
  // exact zero on the 1/Gamma(i lambda) poles (lambda = 0 in particular)
  if (il.imag() == 0.0 && il.real() <= 0.0 && il.real() == std::floor(il.real()))
    return cplx(0.0, 0.0);
  const cplx log_ratio = log_gamma(cplx(rho, 0.0)) - log_gamma(cplx(2.0 * rho, 0.0));
  // single exponential: the separate Gamma factors under/overflow beyond
  // lambda ~ 450 even though their product stays ~ lambda^rho; the ratio form
  // also keeps relative accuracy flat in lambda instead of degrading as
  // |lambda| * eps
  return std::exp(log_ratio + log_gamma_ratio(il, rho));
}

double plancherel_density(const SpaceParams& sp, double lambda) {
  if (lambda < 0.0) throw DomainError("plancherel_density: lambda must be >= 0");
  if (lambda == 0.0) return 0.0;
  return std::norm(c_inverse(sp, cplx(lambda, 0.0)));
}

namespace {

// prefactor pi^{-1/2} 2^{(n-3)/2} Gamma(n/2)/Gamma((n-1)/2)
double phi_prefactor(int n) {
  return std::exp(-0.5 * std::log(kPi) + 0.5 * (n - 3) * std::log(2.0) +
                  std::lgamma(0.5 * n) - std::lgamma(0.5 * (n - 1)));
}

// cosh r - cosh u = 2 sinh((r+u)/2) sinh((r-u)/2), stable near u = r
double cosh_gap(double r, double u) {
  return 2.0 * std::sinh(0.5 * (r + u)) * std::sinh(0.5 * (r - u));
}

cplx phi_quadrature(const SpaceParams& sp, cplx lambda, double r) {
  const int n = sp.n;
  const double p = 0.5 * (n - 3);
  const double tol = 1e-13;
  cplx integral;
  if (n % 2 == 1) {
    // integer power, integrand smooth on [0, r]
    integral = adaptive_gk(
        [&](double u) {
          return std::pow(cosh_gap(r, u), p) * std::cos(lambda * u);
        },
        0.0, r, tol, tol);
  } else {
    // u = r - v^2 removes the half-integer endpoint behavior:
    // gap = 2 sinh(r - v^2/2) sinh(v^2/2) ~ sinh(r) v^2 near v = 0
    integral = adaptive_gk(
        [&](double v) {
          const double gap =
              2.0 * std::sinh(r - 0.5 * v * v) * std::sinh(0.5 * v * v);
          return std::pow(gap, p) * std::cos(lambda * (r - v * v)) * 2.0 * v;
        },
        0.0, std::sqrt(r), tol, tol);
  }
  return phi_prefactor(n) * std::pow(std::sinh(r), 2.0 - n) * 2.0 * integral;
}

struct GammaKey {
  int n;
  double re, im;
  bool operator<(const GammaKey& o) const {
    if (n != o.n) return n < o.n;
    if (re != o.re) return re < o.re;
    return im < o.im;
  }
};

std::vector<cplx> gamma_seq_core(const SpaceParams& sp, cplx lambda, int K) {
  const double rr = sp.rho * (sp.rho - 1.0);
  std::vector<cplx> g(K + 1);
  g[0] = 1.0;
  // acc_k = sum_{j<k} (k-j) g_j telescopes: acc_k = acc_{k-1} + sum_{j<k} g_j,
  // so two running sums replace the quadratic convolution (K can reach ~600
  // for small r, and the symbol is evaluated at every quadrature node)
  cplx s = 0.0, acc = 0.0;
  for (int k = 1; k <= K; ++k) {
    const cplx den = static_cast<double>(k) * (cplx(k, 0.0) - cplx(0.0, 1.0) * lambda);
    if (std::abs(den) < 1e-14)
      throw DomainError("gamma_coeffs: recurrence denominator vanishes");
    s += g[k - 1];
    acc += s;
    g[k] = rr / den * acc;
  }
  return g;
}

std::vector<cplx> gamma_seq(const SpaceParams& sp, cplx lambda, int K) {
  static std::map<GammaKey, std::vector<cplx>> cache;
  static std::mutex mtx;
  const GammaKey key{sp.n, lambda.real(), lambda.imag()};
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end() && static_cast<int>(it->second.size()) > K)
      return {it->second.begin(), it->second.begin() + K + 1};
  }
  std::vector<cplx> g = gamma_seq_core(sp, lambda, K);
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[key];
    if (slot.size() < g.size()) slot = g;
  }
  return g;
}

}  // namespace

cplx phi(const SpaceParams& sp, cplx lambda, double r) {
  if (r < 0.0) throw DomainError("phi: r must be >= 0");
  if (r < 1e-12) return 1.0;
  return phi_quadrature(sp, lambda, r);
}

double phi0(const SpaceParams& sp, double r) {
  return phi(sp, cplx(0.0, 0.0), r).real();
}

std::vector<cplx> gamma_coeff_values(const SpaceParams& sp, cplx lambda, int K) {
  if (K < 0) throw DomainError("gamma_coeff_values: K must be >= 0");
  return gamma_seq_core(sp, lambda, K);
}

GammaCoefficients gamma_coeffs(const SpaceParams& sp, cplx lambda, int K) {
  if (K < 0) throw DomainError("gamma_coeffs: K must be >= 0");
  GammaCoefficients out;
  out.lambda = lambda;
  out.values = gamma_seq(sp, lambda, K);
  // envelope |G_k| (1+|la|) <= C k^nu: slope from least squares, constant
  // lifted so every sample sits below the curve
  std::vector<double> ks, mags;
  const double lift = 1.0 + std::abs(lambda);
  for (int k = 1; k <= K; ++k) {
    const double m = std::abs(out.values[k]) * lift;
    if (m > 0.0) {
      ks.push_back(k);
      mags.push_back(m);
    }
  }
  if (ks.size() >= 2) {
    const SlopeFit fit = fit_loglog(ks, mags);
    out.fitted_nu = fit.slope;
    double c = 0.0;
    for (size_t i = 0; i < ks.size(); ++i)
      c = std::max(c, mags[i] / std::pow(ks[i], fit.slope));
    out.fitted_C = c;
  } else if (!ks.empty()) {
    out.fitted_nu = 0.0;
    out.fitted_C = mags[0];
  }
  return out;
}

HCResult phi_hc(const SpaceParams& sp, double lambda, double r, int K) {
  if (!(r > 0.0)) throw DomainError("phi_hc: r must be > 0");
  if (lambda == 0.0) throw DomainError("phi_hc: lambda must be nonzero");
  const cplx la(lambda, 0.0);
  const auto gp = gamma_seq(sp, la, K);
  const auto gm = gamma_seq(sp, -la, K);
  cplx sum_p = 0.0, sum_m = 0.0;
  for (int k = K; k >= 0; --k) {
    const double damp = std::exp(-2.0 * k * r);
    sum_p += gp[k] * damp;
    sum_m += gm[k] * damp;
  }
  const double envelope = std::pow(2.0 * std::sinh(r), -sp.rho);
  const cplx eplus = std::exp(cplx(0.0, lambda * r));
  const cplx cp = 1.0 / c_inverse(sp, la);
  const cplx cm = 1.0 / c_inverse(sp, -la);
  HCResult out;
  out.value = envelope * (cp * eplus * sum_p + cm * std::conj(eplus) * sum_m);

  // tail: |G_k| <= C k^nu/(1+|la|) summed over k > K, geometric in e^{-2r}
  const auto fit = gamma_coeffs(sp, la, std::max(K, 8));
  double tail = 0.0;
  for (int k = K + 1; k <= K + 200; ++k)
    tail += fit.fitted_C * std::pow(k, std::max(fit.fitted_nu, 0.0)) *
            std::exp(-2.0 * k * r);
  out.tail_estimate =
      envelope * (std::abs(cp) + std::abs(cm)) * tail / (1.0 + std::abs(lambda));
  return out;
}

cplx phi_auto(const SpaceParams& sp, double lambda, double r) {
  lambda = std::abs(lambda);  // phi is even in lambda
  if (r >= 0.5 && lambda >= 0.25) {
    const int K = std::min(64, static_cast<int>(std::ceil(17.0 / r)));
    return phi_hc(sp, lambda, r, K).value;
  }
  return phi(sp, cplx(lambda, 0.0), r);
}

SpectralGrid make_spectral_grid(const SpaceParams& sp, double lambda_max,
                                int npanels, int pts_per_panel) {
  const PanelGrid pg = composite_gauss(0.0, lambda_max, npanels, pts_per_panel);
  SpectralGrid grid;
  grid.lambdas = pg.nodes;
  grid.weights = pg.weights;
  grid.plancherel.resize(pg.nodes.size());
  for (size_t i = 0; i < pg.nodes.size(); ++i)
    grid.plancherel[i] = plancherel_density(sp, pg.nodes[i]);
  return grid;
}

}  // namespace hypwave
