#pragma once

#include "hypwave/function.hpp"

namespace hypwave {

// Normalization constants. The measure constant C_H is the area of the unit
// sphere S^{n-1}; the others are calibrated once per dimension by enforcing
// the inversion identity, Parseval, and the Abel factorization on a
// reference Gaussian e^{-r^2} at high resolution.
struct Calibration {
  int n = 0;
  double C_H = 0.0;
  double C_inv = 0.0;
  double C_P = 0.0;
  double C_A = 0.0;
};

const Calibration& calibration(const SpaceParams& sp);

// phi_{lambda_j}(r_i) as a row-major matrix (lambda index fastest).
std::vector<cplx> phi_matrix(const SpaceParams& sp, const std::vector<double>& rs,
                             const std::vector<double>& las);

// Hf(lambda) = C_H int_0^inf f(r) phi_lambda(r) (sinh r)^{n-1} dr.
// Throws when the decay-class tail estimate beyond the sample grid is too
// large relative to the integral itself.
SpectralFunction spherical_transform(const SpaceParams& sp,
                                     const RadialFunction& f,
                                     const SpectralGrid& grid);

// f(r) = C_inv int_0^inf F(lambda) phi_lambda(r) |c(lambda)|^{-2} d lambda.
RadialFunction inverse_spherical_transform(const SpaceParams& sp,
                                           const SpectralFunction& F,
                                           const std::vector<double>& rgrid);

// 1D inverse Fourier transform of an even profile,
// h(s) = (1/pi) int_0^inf F(lambda) cos(lambda s) d lambda.
RadialFunction inverse_cosine_transform(const SpectralFunction& F,
                                        const std::vector<double>& snodes);

// Inverse Abel transform: C_A (-(1/sinh r) d/dr)^{(n-1)/2} g for odd n; for
// even n the half-integer power is the integral form with the square-root
// endpoint singularity removed by cosh s - cosh r = w^2. Empty rgrid means
// "reuse g's nodes away from the boundary". Throws when finite-difference
// noise indicates g is not smooth enough.
RadialFunction abel_inverse(const SpaceParams& sp, const RadialFunction& g,
                            const std::vector<double>& rgrid = {});

// sqrt(C_H int |f|^2 (sinh r)^{n-1} dr) over the sample grid.
double radial_l2(const SpaceParams& sp, const RadialFunction& f);

}  // namespace hypwave
