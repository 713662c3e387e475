#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace hypwave {

// C-infinity step: 0 for x <= 0, 1 for x >= 1, strictly increasing between.
double smooth_step(double x);

std::vector<double> linspace(double a, double b, int n);
std::vector<double> geomspace(double a, double b, int n);  // a, b > 0

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;  // in log space
};

// Least-squares line through (log x_i, log y_i). All inputs must be positive.
SlopeFit fit_loglog(const std::vector<double>& xs,
                    const std::vector<double>& ys);

// Finite-difference weights for the m-th derivative at x0 from arbitrary
// nodes (Fornberg's algorithm, exact in rational arithmetic up to round-off).
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes,
                               int m);

// m-th derivative of f at x by a symmetric (m+7)-point stencil of spacing h.
double fd_derivative(const std::function<double(double)>& f, double x, int m,
                     double h);
std::complex<double> fd_derivative_c(
    const std::function<std::complex<double>(double)>& f, double x, int m,
    double h);

// Natural cubic spline through (xs, ys); xs strictly increasing.
// Evaluation outside [xs.front(), xs.back()] extrapolates the end cubics.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> xs, std::vector<double> ys);
  double operator()(double x) const;
  bool empty() const { return x_.empty(); }

 private:
  std::vector<double> x_, y_, m_;  // m_ holds second derivatives
};

// Runs body(i) for i in [0, n) on up to hardware_concurrency threads.
void parallel_for(size_t n, const std::function<void(size_t)>& body);

}  // namespace hypwave
