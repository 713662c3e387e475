#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace hypwave {

struct GaussRule {
  std::vector<double> x;  // nodes on (-1,1)
  std::vector<double> w;
};

// Cached Gauss-Legendre rule with npts points.
const GaussRule& gauss_legendre(int npts);

// Nodes and weights of a composite Gauss rule over [a,b], panels of equal
// width. All nodes are interior, so integrands singular at the endpoints
// (integrably so) can still be sampled.
struct PanelGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
};
PanelGrid composite_gauss(double a, double b, int npanels, int pts_per_panel);

// Globally adaptive Gauss-Kronrod 15(7) for complex-valued integrands on a
// finite interval. Splits the interval with the worst error estimate until
// the total estimate drops below max(abs_tol, rel_tol*|I|). Throws
// NumericError when the subdivision budget is exhausted while the estimate
// is still an order of magnitude above the target.
std::complex<double> adaptive_gk(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double abs_tol, double rel_tol = 1e-12, int max_intervals = 4000);

double adaptive_gk_real(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, double rel_tol = 1e-12,
                        int max_intervals = 4000);

}  // namespace hypwave
