#include "martlab/time_change.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace martlab {

IncreasingFn::IncreasingFn(TimeGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("IncreasingFn: values/grid size mismatch");
  if (values_.front() != 0.0)
    throw std::invalid_argument("IncreasingFn: values[0] must be 0");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k]))
      throw std::invalid_argument("IncreasingFn: non-finite value");
    if (k > 0 && values_[k] < values_[k - 1])
      throw std::invalid_argument("IncreasingFn: values must be nondecreasing");
  }
}

IncreasingFn IncreasingFn::identity(const TimeGrid& grid) {
  return IncreasingFn(grid, grid.nodes());
}

double IncreasingFn::operator()(double t) const {
  const std::size_t k = grid_.cell_of(t);
  if (k + 1 == grid_.size()) return values_[k];
  const double t0 = grid_[k];
  const double t1 = grid_[k + 1];
  const double w = (t - t0) / (t1 - t0);
  return values_[k] + w * (values_[k + 1] - values_[k]);
}

double lambda_dagger(const IncreasingFn& lambda, double t) {
  const auto& v = lambda.values();
  const auto& g = lambda.grid();
  const double top = v.back();
  const double tol = 1e-12 * (1.0 + std::abs(t));
  if (t < -tol || t > top + tol)
    throw std::out_of_range("lambda_dagger: t outside [0, lambda(T_max)]");
  t = std::clamp(t, 0.0, top);
  if (t >= top) return g.t_max();
  // Last node with value <= t; exists since v[0] = 0 <= t.
  const auto it = std::upper_bound(v.begin(), v.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - v.begin()) - 1;
  // Segment j rises through level t (v[j] <= t < v[j+1]); solve linearly.
  const double s0 = g[j];
  const double s1 = g[j + 1];
  return s0 + (t - v[j]) / (v[j + 1] - v[j]) * (s1 - s0);
}

double check_right_inverse(const IncreasingFn& lambda, double t) {
  return std::abs(lambda(lambda_dagger(lambda, t)) - t);
}

VecPath time_change_path(const VecPath& y, const IncreasingFn& lambda,
                         const TimeGrid& output_grid) {
  const double tol = 1e-9 * (1.0 + lambda.t_max());
  if (std::abs(y.grid.t_max() - lambda.t_max()) > tol)
    throw std::out_of_range("time_change_path: Y grid does not span lambda's");
  if (std::abs(output_grid.t_max() - lambda.range_max()) >
      1e-9 * (1.0 + lambda.range_max()))
    throw std::out_of_range(
        "time_change_path: output grid does not span [0, lambda(T_max)]");
  VecPath x(output_grid, y.dim, y.kind);
  std::vector<double> buf(static_cast<std::size_t>(y.dim));
  const auto y0 = y.at(0);
  for (std::size_t k = 0; k < output_grid.size(); ++k) {
    y.eval(lambda_dagger(lambda, output_grid[k]), buf);
    auto out = x.at(k);
    for (int i = 0; i < y.dim; ++i) out[i] = buf[i] - y0[i];
  }
  return x;
}

VecPath time_change_path(const VecPath& y, const IncreasingFn& lambda) {
  return time_change_path(
      y, lambda,
      TimeGrid::uniform(lambda.range_max(), y.grid.size() - 1));
}

}  // namespace martlab
