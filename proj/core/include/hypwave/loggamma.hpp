#pragma once

#include <complex>

namespace hypwave {

using cplx = std::complex<double>;

// log Gamma(z) for complex z. The imaginary part may differ from the
// principal branch by a multiple of 2*pi; every use site exponentiates or
// takes real parts of symmetric combinations, so this is harmless.
cplx log_gamma(cplx z);

cplx gamma_fn(cplx z);

// 1/Gamma(z), entire in z; returns exactly 0 at the poles z = 0, -1, -2, ...
cplx reciprocal_gamma(cplx z);

// log Gamma(z + a) - log Gamma(z). The naive difference loses absolute
// accuracy ~ |z| * eps once |z| is large (both terms grow like |z log z|
// while the difference stays ~ a log|z|), which matters for Fourier symbols
// sampled at frequencies up to 1e8 and beyond. For Re z >= 0 away from the
// origin this evaluates the difference of Stirling series term by term, so
// the error stays at a few ulps of the result itself.
cplx log_gamma_ratio(cplx z, double a);

}  // namespace hypwave
