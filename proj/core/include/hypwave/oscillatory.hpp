#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hypwave/loggamma.hpp"
#include "hypwave/util.hpp"

namespace hypwave {

enum class SymbolSupport {
  kCompactHomogeneous,      // a(la) = la^d * cutoff, supported in [0, support_radius]
  kInhomogeneousHalfline,   // smooth on [0, inf), |d^l a| <~ (1+la)^{d-l}
  kInhomogeneousFullline,   // same bounds on all of R; transform over R
};

// Slow-decay leading term coeff * chi(la) la^power split off the positive
// half-line for analytic tail handling (chi rises smoothly on [cut, 2 cut]
// and equals 1 beyond, so the head is exact past 2 cut). Used for order -1
// pieces where integration by parts gains nothing.
struct SymbolHead {
  cplx coeff;
  cplx power;
  double cut = 1.0;
};

struct SymbolSpec {
  std::function<cplx(double)> evaluate;
  double order = 0.0;
  SymbolSupport support = SymbolSupport::kInhomogeneousHalfline;
  int derivative_order_available = 0;
  std::function<cplx(double)> derivative;  // optional analytic d/d la
  double support_radius = 2.0;             // upper edge for compact support
  std::optional<SymbolHead> head;
};

// k(x) = integral of a(la) e^{i la x} over the declared support: [0, inf)
// for compact/halfline symbols, all of R for full-line symbols. Absolute
// tolerance. Filon panels (exact oscillatory moments per panel) plus a
// two-step integration-by-parts tail; declared heads get an exact rotated
// contour tail instead.
cplx oscillatory_fourier(const SymbolSpec& a, double x, double tol);

struct DecayReport {
  SlopeFit fit;             // log|k| against log|x| over the sample points
  double max_abs = 0.0;     // max |k| over the sample points
  double origin_sup = 0.0;  // sampled sup over 0 < |x| <= 1/2, when checked
  bool origin_checked = false;
  int origin_derivative = 0;  // m for which the m-th derivative was probed
};

// Fits the far-field decay of |k| on xs (which must span at least a decade)
// and, for symbols that are only borderline integrable (declared head or
// order <= -1), samples the transform near the origin. When a head of order
// -m-1 is declared with m >= 1, the origin probe applies to the m-th
// derivative, which is the bounded quantity.
DecayReport symbol_decay_check(const SymbolSpec& a, const std::vector<double>& xs,
                               double tol = 1e-9);

}  // namespace hypwave
