#pragma once

#include <functional>
#include <vector>

#include "hypwave/space.hpp"
#include "hypwave/util.hpp"

namespace hypwave {

// Decay class of a radial sample set, used to estimate truncation tails
// beyond the last grid node.
enum class DecayClass { kCompact, kGaussian, kExponential };

struct RadialFunction {
  std::vector<double> grid;  // r-nodes, grid[0] == 0, strictly increasing
  std::vector<cplx> values;
  DecayClass decay = DecayClass::kGaussian;

  void validate() const;  // DomainError on malformed grid or non-finite values
};

struct SpectralFunction {
  SpectralGrid grid;
  std::vector<cplx> values;

  void validate() const;
};

RadialFunction sample_radial(const std::function<cplx(double)>& f,
                             const std::vector<double>& grid, DecayClass decay);

// Hybrid radial grid: uniform fine step on [0,1], geometric growth beyond.
std::vector<double> default_radial_grid(double r_max, double fine_step = 1e-3,
                                        double growth = 1.01);

// Cubic-spline view of a RadialFunction; evaluates to 0 beyond the last node.
class RadialSpline {
 public:
  explicit RadialSpline(const RadialFunction& f);
  cplx operator()(double r) const;
  double r_max() const { return rmax_; }

 private:
  CubicSpline re_, im_;
  double rmax_;
  bool has_im_;
};

// Estimated mass of |f| (sinh r)^{n-1} beyond the last grid node, from the
// decay class and the trailing samples. Zero for compact support.
double radial_tail_estimate(const SpaceParams& sp, const RadialFunction& f);

// Fit a decay tag to computed samples: compact if the tail is numerically
// zero, otherwise whichever of log|f| ~ a - b r^2 / a - b r fits better.
DecayClass infer_decay_class(const std::vector<double>& grid,
                             const std::vector<cplx>& values);

}  // namespace hypwave
