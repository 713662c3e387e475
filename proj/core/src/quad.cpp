#include "hypwave/quad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>

#include "hypwave/errors.hpp"

namespace hypwave {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct Segment {
  double a, b;
  std::complex<double> value;
  double err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

Segment gk15(const std::function<std::complex<double>(double)>& f, double a,
             double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::complex<double> gk = kWgk[7] * f(c);
  std::complex<double> g = kWg[3] * f(c);
  for (int j = 0; j < 7; ++j) {
    const std::complex<double> fsum = f(c - h * kXgk[j]) + f(c + h * kXgk[j]);
    gk += kWgk[j] * fsum;
    if (j % 2 == 1) g += kWg[j / 2] * fsum;
  }
  gk *= h;
  g *= h;
  return Segment{a, b, gk, std::abs(gk - g)};
}

}  // namespace

const GaussRule& gauss_legendre(int npts) {
  static std::map<int, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(npts);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.x.resize(npts);
  rule.w.resize(npts);
  const int m = (npts + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton on P_n, starting from the Chebyshev-like guess
    double x = std::cos(std::numbers::pi * (i + 0.75) / (npts + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= npts; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = npts * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.x[i] = -x;
    rule.x[npts - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.w[i] = w;
    rule.w[npts - 1 - i] = w;
  }
  return cache.emplace(npts, std::move(rule)).first->second;
}

PanelGrid composite_gauss(double a, double b, int npanels, int pts_per_panel) {
  if (!(b > a) || npanels < 1 || pts_per_panel < 1)
    throw DomainError("composite_gauss: bad panel layout");
  const GaussRule& rule = gauss_legendre(pts_per_panel);
  PanelGrid grid;
  grid.nodes.reserve(static_cast<size_t>(npanels) * pts_per_panel);
  grid.weights.reserve(grid.nodes.capacity());
  const double h = (b - a) / npanels;
  for (int p = 0; p < npanels; ++p) {
    const double lo = a + p * h;
    for (int j = 0; j < pts_per_panel; ++j) {
      grid.nodes.push_back(lo + 0.5 * h * (rule.x[j] + 1.0));
      grid.weights.push_back(0.5 * h * rule.w[j]);
    }
  }
  return grid;
}

std::complex<double> adaptive_gk(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double abs_tol, double rel_tol, int max_intervals) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::priority_queue<Segment> queue;
  queue.push(gk15(f, a, b));
  std::complex<double> total = queue.top().value;
  double total_err = queue.top().err;
  int n = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (n >= max_intervals) {
      if (total_err > 10.0 * std::max(abs_tol, rel_tol * std::abs(total)))
        throw NumericError("adaptive_gk: no convergence after " +
                           std::to_string(n) + " intervals");
      break;
    }
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    queue.push(left);
    queue.push(right);
    ++n;
  }
  return sign * total;
}

double adaptive_gk_real(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, double rel_tol,
                        int max_intervals) {
  return adaptive_gk([&f](double x) { return std::complex<double>(f(x), 0.0); },
                     a, b, abs_tol, rel_tol, max_intervals)
      .real();
}

}  // namespace hypwave
