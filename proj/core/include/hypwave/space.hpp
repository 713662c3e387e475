#pragma once

#include <complex>
#include <vector>

#include "hypwave/loggamma.hpp"

namespace hypwave {

struct SpaceParams {
  int n = 3;
  double rho = 1.0;        // (n-1)/2
  double rho_tilde = 2.0;  // shift parameter, must exceed rho

  // rho_tilde < 0 means "use the default rho + 1"
  static SpaceParams make(int n, double rho_tilde = -1.0);
};

// c(lambda)^{-1} = [Gamma(rho)/Gamma(2 rho)] * Gamma(i lambda + rho)/Gamma(i lambda).
// Entire in lambda except for poles of Gamma(i lambda + rho), which are
// reported as DomainError. c_inverse(0) = 0 through the 1/Gamma(0) zero.
cplx c_inverse(const SpaceParams& sp, cplx lambda);

// |c(lambda)|^{-2} for real lambda >= 0, with the continuous extension 0 at 0.
double plancherel_density(const SpaceParams& sp, double lambda);

// Spherical function phi_lambda(r) by adaptive quadrature of
//   prefac(n) (sinh r)^{2-n} * 2 * Int_0^r (cosh r - cosh u)^{(n-3)/2} cos(lambda u) du.
// Even dimensions substitute u = r - v^2 to remove the endpoint singularity.
cplx phi(const SpaceParams& sp, cplx lambda, double r);

// phi at lambda = 0 (the ground spherical function), real valued.
double phi0(const SpaceParams& sp, double r);

struct GammaCoefficients {
  cplx lambda;
  std::vector<cplx> values;  // Gamma_0 .. Gamma_K
  double fitted_C = 0.0;     // envelope constant for |G_k| <= C k^nu/(1+|lambda|)
  double fitted_nu = 0.0;
};

// Recurrence G_0 = 1, G_k = rho(rho-1)/(k(k - i lambda)) sum_{j<k} (k-j) G_j.
// Results for real lambda are memoized.
GammaCoefficients gamma_coeffs(const SpaceParams& sp, cplx lambda, int K);

// The bare recurrence values G_0..G_K without the cache. Kernel series sums
// call this at adaptive quadrature nodes, where memoizing by lambda would
// only grow the table.
std::vector<cplx> gamma_coeff_values(const SpaceParams& sp, cplx lambda, int K);

struct HCResult {
  cplx value;
  double tail_estimate;  // bound on the dropped k > K terms
};

// Harish-Chandra expansion c(la) Phi_la + c(-la) Phi_{-la} truncated at K,
//   Phi_{+-la}(r) = (2 sinh r)^{-rho} e^{+-i la r} sum_k G_k(+-la) e^{-2kr}.
HCResult phi_hc(const SpaceParams& sp, double lambda, double r, int K);

// Quadrature representation where it is cheap and well conditioned,
// HC series (auto truncation) for r >= 0.5 and lambda away from 0.
cplx phi_auto(const SpaceParams& sp, double lambda, double r);

struct SpectralGrid {
  std::vector<double> lambdas;
  std::vector<double> weights;     // quadrature weights in lambda
  std::vector<double> plancherel;  // |c(lambda_i)|^{-2}
};

SpectralGrid make_spectral_grid(const SpaceParams& sp, double lambda_max,
                                int npanels, int pts_per_panel);

}  // namespace hypwave
