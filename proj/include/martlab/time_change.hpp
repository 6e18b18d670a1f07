#pragma once

#include <vector>

#include "martlab/grid.hpp"
#include "martlab/path.hpp"

namespace martlab {

// Increasing continuous deterministic time scale, stored piecewise-linear
// over its grid.  values[0] = 0 and values are nondecreasing.
class IncreasingFn {
 public:
  IncreasingFn() = default;
  IncreasingFn(TimeGrid grid, std::vector<double> values);

  static IncreasingFn identity(const TimeGrid& grid);

  double operator()(double t) const;  // piecewise-linear evaluation
  const TimeGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double value_at(std::size_t k) const { return values_[k]; }
  double t_max() const { return grid_.t_max(); }
  double range_max() const { return values_.back(); }

 private:
  TimeGrid grid_;
  std::vector<double> values_;
};

// Generalized inverse sup{s : lambda(s) <= t}, solved analytically per
// linear segment.  On a plateau at level t, returns the plateau's right
// endpoint (the sup).
double lambda_dagger(const IncreasingFn& lambda, double t);

// |lambda(lambda_dagger(lambda, t)) - t|; the right-inverse residual.
double check_right_inverse(const IncreasingFn& lambda, double t);

// X(t) = Y(lambda_dagger(lambda, t)) - Y(0) sampled on output_grid.
VecPath time_change_path(const VecPath& y, const IncreasingFn& lambda,
                         const TimeGrid& output_grid);
// Default output grid: uniform on [0, lambda(T_max)], same node count as Y.
VecPath time_change_path(const VecPath& y, const IncreasingFn& lambda);

}  // namespace martlab
