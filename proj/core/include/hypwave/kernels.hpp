#pragma once

#include <string>
#include <vector>

#include "hypwave/space.hpp"

namespace hypwave {

// Propagator kernels of the shifted wave flow,
//   w_t(r) = int_0^inf |c(la)|^{-2} la^{-tau} (la^2+rho_tilde^2)^{(tau-sigma)/2}
//            phi_la(r) e^{i t la} d la,
// split by a smooth partition into the low-frequency piece w_t^0 (la in [0,2])
// and the high-frequency piece w_t^inf (la >= 1). The regularized version
// multiplies w^inf by e^{sigma^2}/Gamma((n+1)/2 - sigma), which continues the
// family across the poles and vanishes exactly where the Gamma pole sits.
// Values carry no volume normalization; envelope constants absorb it.

struct KernelParams {
  SpaceParams space;
  cplx sigma{1.0, 0.0};
  double tau = 0.0;  // low-frequency exponent, [0, 3/2)
  double t = 0.0;

  // throws DomainError on tau outside [0,3/2), nonfinite t, Re sigma < 0
  void validate() const;
};

// chi0 + chi_inf == 1 exactly (chi_inf is the literal complement); chi0 is 1
// on [0,1] and supported in [0,2], chi_inf is 1 on [2,inf) and supported in
// [1,inf).
struct CutoffPair {
  double chi0(double la) const;
  double chi_inf(double la) const;
};

// e^{sigma^2} / Gamma((n+1)/2 - sigma). Returns exactly 0 when the Gamma
// argument is a non-positive integer (the pole of Gamma makes 1/Gamma vanish);
// detecting this exactly matters because e^{sigma^2} is enormous there.
cplx regularizing_prefactor(const SpaceParams& sp, cplx sigma);

// la^{-tau} (la^2 + rho_tilde^2)^{(tau-sigma)/2}, principal branch, la > 0.
cplx spectral_weight(const KernelParams& kp, double la);

// Low-frequency kernel: finite oscillatory integral over la in [0,2].
cplx w0_kernel(const KernelParams& kp, double r, double tol = 1e-10);

// Unregularized high-frequency kernel (the chi_inf integral). For r > 0 the
// spherical function is split into its Harish-Chandra halves, which turns the
// integral into two genuine symbol transforms with phases t+r and t-r; the
// r = 0 column is handled by subtracting the explicit power asymptotics of
// the density. Points on the light cone |t| = r are nudged off by 1e-9.
cplx w_inf_raw(const KernelParams& kp, double r, double tol = 1e-10);

// Regularized kernel: regularizing_prefactor * w_inf_raw.
cplx w_inf_tilde(const KernelParams& kp, double r, double tol = 1e-10);

// n = 3 cross-check route: |c|^{-2} = la^2 and phi = sin(la r)/(la sinh r)
// collapse the full integral (no cutoff) to two half-line symbols. Needs
// tau <= 1 so the integrand stays bounded at la = 0.
cplx w_full_direct(const KernelParams& kp, double r, double tol = 1e-10);

// One sampled point of an envelope table: |kernel| against the claimed bound.
struct EnvelopeRow {
  int regime = 0;  // 1..6, see kernel_envelope_report
  double t = 0.0;
  double r = 0.0;
  double value = 0.0;     // |w|
  double envelope = 0.0;  // the bound being tested, constant-free
  double ratio = 0.0;     // value / envelope
};

struct RegimeSummary {
  int regime = 0;
  std::string label;
  double max_ratio = 0.0;          // fitted constant on the coarse grid
  double max_ratio_refined = 0.0;  // same with twice the grid density
  double t_at_max = 0.0;
  double r_at_max = 0.0;
  bool bounded = false;  // finite and below the blow-up guard
  bool stable = false;   // refinement did not grow the constant materially
  // regime 2 only: log-log slope of sup_{r <= t/2} |w0| against t, and the
  // exponent tau - 3 it should match
  double sup_slope = 0.0;
  double sup_slope_expected = 0.0;
};

// Envelope verification of the six kernel regimes:
//   1  |t| <= 2:            |w0| <~ phi_0(r)
//   2  |t| >= 2, r <= t/2:  |w0| <~ |t|^{tau-3} phi_0(r)
//   3  |t| >= 2, r >= t/2:  |w0| <~ (1+|r-t|)^{tau-2} e^{-rho r}
//   4  |t| <= 2, r <= 3:    |w~| <~ |t|^{-(n-1)/2}   (n=2: |t|^{-1/2}(1-log|t|))
//   5  |t| <= 2, r >= 3:    |w~| <~ r^{-N} e^{-rho r}
//   6  |t| >= 2:            |w~| <~ (1+|r-t|)^{-N} e^{-rho r}
// w0 rows use sigma = (n+1)/2 real; w~ rows use sigma = (n+1)/2 + i, where
// the imaginary part keeps the regularized kernel finite on the light cone.
// The -infinity orders are certified at the finite order N = norder.
// Grids stay where the envelope clears the quadrature floor, so the ratio is
// meaningful at every sampled point.
struct EnvelopeReport {
  int n = 0;
  double tau = 0.0;
  double sigma0 = 0.0;  // real sigma used for the w0 regimes
  cplx sigma_tilde;     // complex sigma used for the w~ regimes
  int norder = 5;
  std::vector<EnvelopeRow> rows;          // coarse-grid rows, ordered by regime
  std::vector<RegimeSummary> regimes;     // one entry per regime, ordered 1..6
  bool pass = false;                      // all regimes bounded and stable
};

EnvelopeReport kernel_envelope_report(const SpaceParams& sp, double tau,
                                      int norder = 5, double tol = 1e-9);

// regime,t,r,value,envelope,ratio rows (coarse grid only)
void write_envelope_csv(const EnvelopeReport& rep, const std::string& path);
// parameters, per-regime summaries, and all rows
void write_envelope_json(const EnvelopeReport& rep, const std::string& path);

}  // namespace hypwave
