#include "hypwave/util.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "hypwave/errors.hpp"

namespace hypwave {

namespace {
double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
}  // namespace

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double b0 = bump(x);
  return b0 / (b0 + bump(1.0 - x));
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) return {a};
  std::vector<double> out(n);
  const double h = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) out[i] = a + h * i;
  out.back() = b;
  return out;
}

std::vector<double> geomspace(double a, double b, int n) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("geomspace: needs a,b > 0");
  if (n < 2) return {a};
  std::vector<double> out(n);
  const double q = std::log(b / a) / (n - 1);
  for (int i = 0; i < n; ++i) out[i] = a * std::exp(q * i);
  out.back() = b;
  return out;
}

SlopeFit fit_loglog(const std::vector<double>& xs,
                    const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw DomainError("fit_loglog: need >= 2 matching samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw DomainError("fit_loglog: nonpositive sample");
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

std::vector<double> fd_weights(double x0, const std::vector<double>& nodes,
                               int m) {
  // Fornberg (1988), Mathematics of Computation 51, 699-706.
  const int nd = static_cast<int>(nodes.size());
  if (m >= nd) throw DomainError("fd_weights: too few nodes for order");
  std::vector<std::vector<double>> c(nd, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < nd; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(nd);
  for (int i = 0; i < nd; ++i) w[i] = c[i][m];
  return w;
}

namespace {

std::vector<double> symmetric_stencil(double x, int m, double h, int* npts) {
  // m+7 points keeps the truncation order at >= 6 for every m used here.
  int n = m + 7;
  if (n % 2 == 0) ++n;
  *npts = n;
  std::vector<double> nodes(n);
  const int half = n / 2;
  for (int i = 0; i < n; ++i) nodes[i] = x + (i - half) * h;
  return nodes;
}

}  // namespace

double fd_derivative(const std::function<double(double)>& f, double x, int m,
                     double h) {
  if (m == 0) return f(x);
  int n = 0;
  const std::vector<double> nodes = symmetric_stencil(x, m, h, &n);
  const std::vector<double> w = fd_weights(x, nodes, m);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += w[i] * f(nodes[i]);
  return acc;
}

std::complex<double> fd_derivative_c(
    const std::function<std::complex<double>(double)>& f, double x, int m,
    double h) {
  if (m == 0) return f(x);
  int n = 0;
  const std::vector<double> nodes = symmetric_stencil(x, m, h, &n);
  const std::vector<double> w = fd_weights(x, nodes, m);
  std::complex<double> acc = 0.0;
  for (int i = 0; i < n; ++i) acc += w[i] * f(nodes[i]);
  return acc;
}

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys)
    : x_(std::move(xs)), y_(std::move(ys)) {
  const size_t n = x_.size();
  if (n != y_.size() || n < 2) throw DomainError("CubicSpline: bad input");
  m_.assign(n, 0.0);
  if (n == 2) return;
  // tridiagonal solve for natural end conditions
  std::vector<double> diag(n, 0.0), rhs(n, 0.0), off(n, 0.0);
  for (size_t i = 1; i + 1 < n; ++i) {
    const double hl = x_[i] - x_[i - 1];
    const double hr = x_[i + 1] - x_[i];
    diag[i] = 2.0 * (hl + hr);
    off[i] = hr;
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
  }
  for (size_t i = 2; i + 1 < n; ++i) {
    const double hl = x_[i] - x_[i - 1];
    const double f = hl / diag[i - 1];
    diag[i] -= f * off[i - 1];
    rhs[i] -= f * rhs[i - 1];
  }
  for (size_t i = n - 2; i >= 1; --i) {
    m_[i] = (rhs[i] - off[i] * m_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

double CubicSpline::operator()(double x) const {
  const size_t n = x_.size();
  size_t hi = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
  hi = std::clamp<size_t>(hi, 1, n - 1);
  const size_t lo = hi - 1;
  const double h = x_[hi] - x_[lo];
  const double a = (x_[hi] - x) / h;
  const double b = (x - x_[lo]) / h;
  return a * y_[lo] + b * y_[hi] +
         ((a * a * a - a) * m_[lo] + (b * b * b - b) * m_[hi]) * h * h / 6.0;
}

void parallel_for(size_t n, const std::function<void(size_t)>& body) {
  if (n == 0) return;
  size_t nthreads = std::thread::hardware_concurrency();
  if (nthreads == 0) nthreads = 2;
  nthreads = std::min(nthreads, n);
  if (nthreads <= 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  std::atomic<size_t> next{0};
  for (size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&]() {
      for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace hypwave
