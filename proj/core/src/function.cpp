#include "hypwave/function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "hypwave/errors.hpp"

namespace hypwave {

void RadialFunction::validate() const {
  if (grid.empty() || grid.size() != values.size())
    throw DomainError("radial function: grid/value size mismatch");
  if (grid[0] != 0.0) throw DomainError("radial function: grid must start at 0");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw DomainError("radial function: grid not strictly increasing");
  for (const cplx& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("radial function: non-finite value");
}

void SpectralFunction::validate() const {
  if (grid.lambdas.size() != values.size())
    throw DomainError("spectral function: grid/value size mismatch");
  for (const cplx& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("spectral function: non-finite value");
}

RadialFunction sample_radial(const std::function<cplx(double)>& f,
                             const std::vector<double>& grid, DecayClass decay) {
  RadialFunction out;
  out.grid = grid;
  out.values.resize(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) out.values[i] = f(grid[i]);
  out.decay = decay;
  out.validate();
  return out;
}

std::vector<double> default_radial_grid(double r_max, double fine_step,
                                        double growth) {
  if (r_max <= 0.0) throw DomainError("radial grid: r_max must be positive");
  std::vector<double> g;
  double r = 0.0;
  const double fine_end = std::min(1.0, r_max);
  while (r < fine_end - 0.5 * fine_step) {
    g.push_back(r);
    r += fine_step;
  }
  g.push_back(fine_end);
  r = fine_end;
  double step = fine_step;
  while (r < r_max) {
    step *= growth;
    r = std::min(r + step, r_max);
    g.push_back(r);
  }
  return g;
}

RadialSpline::RadialSpline(const RadialFunction& f) {
  f.validate();
  std::vector<double> re(f.values.size()), im(f.values.size());
  has_im_ = false;
  for (size_t i = 0; i < f.values.size(); ++i) {
    re[i] = f.values[i].real();
    im[i] = f.values[i].imag();
    if (im[i] != 0.0) has_im_ = true;
  }
  re_ = CubicSpline(f.grid, re);
  if (has_im_) im_ = CubicSpline(f.grid, im);
  rmax_ = f.grid.back();
}

cplx RadialSpline::operator()(double r) const {
  if (r < 0.0 || r > rmax_) return cplx(0.0, 0.0);
  return has_im_ ? cplx(re_(r), im_(r)) : cplx(re_(r), 0.0);
}

namespace {

// least-squares fit log|v| = a - b * x over the supplied pairs
bool fit_log_decay(const std::vector<double>& xs, const std::vector<double>& mags,
                   double* a_out, double* b_out) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (mags[i] <= 0.0) continue;
    const double y = std::log(mags[i]);
    sx += xs[i];
    sy += y;
    sxx += xs[i] * xs[i];
    sxy += xs[i] * y;
    ++m;
  }
  if (m < 3) return false;
  const double det = m * sxx - sx * sx;
  if (std::abs(det) < 1e-30) return false;
  const double slope = (m * sxy - sx * sy) / det;
  *b_out = -slope;
  *a_out = (sy - slope * sx) / m;
  return true;
}

}  // namespace

double radial_tail_estimate(const SpaceParams& sp, const RadialFunction& f) {
  f.validate();
  if (f.decay == DecayClass::kCompact) return 0.0;
  const double R = f.grid.back();
  const size_t ntot = f.grid.size();
  // window by radius, not index: graded grids pack most nodes near 0
  const double r_lo = std::max(0.5 * R, R - 3.0);
  size_t start = ntot - 1;
  while (start > 0 && f.grid[start - 1] >= r_lo) --start;
  if (ntot - start < 4) start = (ntot >= 4) ? ntot - 4 : 0;
  std::vector<double> xs, mags;
  double edge = 0.0;
  for (size_t i = start; i < ntot; ++i) {
    const double m = std::abs(f.values[i]);
    xs.push_back(f.decay == DecayClass::kGaussian ? f.grid[i] * f.grid[i]
                                                  : f.grid[i]);
    mags.push_back(m);
    edge = std::max(edge, m);
  }
  if (edge == 0.0) return 0.0;

  double a = 0.0, b = 0.0;
  const bool fitted = fit_log_decay(xs, mags, &a, &b);
  if (!fitted || b <= 0.0) {
    // no measurable decay in the tail window: charge the worst case
    b = (f.decay == DecayClass::kGaussian) ? 1e-6 : 0.0;
  }
  // edge value from the fitted envelope, so an incidental zero of f at the
  // last node does not hide the tail
  const double xR = (f.decay == DecayClass::kGaussian) ? R * R : R;
  const double env_R = fitted ? std::min(edge, std::exp(a - b * xR)) : edge;
  const double fR = std::max(std::abs(f.values.back()), env_R);

  // integrate the fitted envelope against (sinh r)^{n-1} out to where it dies
  const double growth = sp.n - 1.0;
  auto logterm = [&](double r) {
    const double decay_log = (f.decay == DecayClass::kGaussian)
                                 ? -b * (r * r - R * R)
                                 : -b * (r - R);
    return std::log(fR) + decay_log + growth * r - growth * R;
  };
  // exponential class with decay rate not beating the volume growth
  if (f.decay == DecayClass::kExponential && b <= growth + 1e-12)
    return std::numeric_limits<double>::infinity();
  // sinh r <= e^r / 2, so (sinh r)^{n-1} <= e^{growth r} / 2^{n-1}
  double tail = 0.0;
  const double h = 0.05;
  for (double r = R; r < R + 60.0; r += h) {
    const double t = std::exp(logterm(r + 0.5 * h) + growth * R) * h;
    tail += t;
    if (t < 1e-18 * (tail + 1e-300)) break;
  }
  return tail * std::pow(0.5, sp.n - 1.0);
}

DecayClass infer_decay_class(const std::vector<double>& grid,
                             const std::vector<cplx>& values) {
  double vmax = 0.0;
  for (const cplx& v : values) vmax = std::max(vmax, std::abs(v));
  if (vmax == 0.0) return DecayClass::kCompact;
  const size_t ntot = grid.size();
  const size_t start = ntot - std::max<size_t>(4, ntot / 4);
  double edge = 0.0;
  for (size_t i = start; i < ntot; ++i) edge = std::max(edge, std::abs(values[i]));
  if (edge < 1e-13 * vmax) return DecayClass::kCompact;

  auto residual = [&](bool squared) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<std::pair<double, double>> pts;
    for (size_t i = start; i < ntot; ++i) {
      const double m = std::abs(values[i]);
      if (m <= 0.0) continue;
      const double x = squared ? grid[i] * grid[i] : grid[i];
      const double y = std::log(m);
      pts.emplace_back(x, y);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    if (pts.size() < 3) return 1e100;
    const double m = static_cast<double>(pts.size());
    const double det = m * sxx - sx * sx;
    if (std::abs(det) < 1e-30) return 1e100;
    const double slope = (m * sxy - sx * sy) / det;
    const double icpt = (sy - slope * sx) / m;
    double rss = 0.0;
    for (const auto& [x, y] : pts) {
      const double e = y - (icpt + slope * x);
      rss += e * e;
    }
    return rss;
  };
  return residual(true) <= residual(false) ? DecayClass::kGaussian
                                           : DecayClass::kExponential;
}

}  // namespace hypwave
