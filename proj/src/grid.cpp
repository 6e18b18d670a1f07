#include "martlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace martlab {

TimeGrid::TimeGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw std::invalid_argument("TimeGrid: need >= 2 nodes");
  if (nodes_.front() != 0.0)
    throw std::invalid_argument("TimeGrid: first node must be 0");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i]))
      throw std::invalid_argument("TimeGrid: non-finite node");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
      throw std::invalid_argument("TimeGrid: nodes must increase strictly");
  }
}

TimeGrid TimeGrid::uniform(double t_max, std::size_t steps) {
  if (!(t_max > 0.0) || steps < 1)
    throw std::invalid_argument("TimeGrid::uniform: bad parameters");
  std::vector<double> nodes(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i)
    nodes[i] = t_max * static_cast<double>(i) / static_cast<double>(steps);
  nodes.back() = t_max;
  return TimeGrid(std::move(nodes));
}

double TimeGrid::max_step() const {
  double h = 0.0;
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    h = std::max(h, nodes_[i] - nodes_[i - 1]);
  return h;
}

std::size_t TimeGrid::index_of(double t) const {
  const double tol = 1e-9 * (1.0 + std::abs(t));
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t - tol);
  if (it != nodes_.end() && std::abs(*it - t) <= tol)
    return static_cast<std::size_t>(it - nodes_.begin());
  throw std::invalid_argument("TimeGrid::index_of: t is not a grid node");
}

std::size_t TimeGrid::cell_of(double t) const {
  if (t < 0.0 || t > nodes_.back())
    throw std::out_of_range("TimeGrid::cell_of: t outside [0, t_max]");
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
  return static_cast<std::size_t>(it - nodes_.begin()) - 1;
}

bool TimeGrid::refines(const TimeGrid& coarse) const {
  for (double t : coarse.nodes()) {
    const double tol = 1e-9 * (1.0 + std::abs(t));
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t - tol);
    if (it == nodes_.end() || std::abs(*it - t) > tol) return false;
  }
  return true;
}

}  // namespace martlab
