#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace martlab {

// Strictly increasing time nodes on [0, t_max], nodes[0] == 0.
class TimeGrid {
 public:
  TimeGrid() = default;
  explicit TimeGrid(std::vector<double> nodes);
  static TimeGrid uniform(double t_max, std::size_t steps);

  std::size_t size() const { return nodes_.size(); }
  double operator[](std::size_t i) const { return nodes_[i]; }
  double t_max() const { return nodes_.back(); }
  std::span<const double> nodes() const { return nodes_; }
  double max_step() const;

  // Index of the exact node equal to t (within 1e-9 * (1 + t)); throws
  // std::invalid_argument when t is not a node.
  std::size_t index_of(double t) const;
  // Largest k with nodes[k] <= t; t must lie in [0, t_max].
  std::size_t cell_of(double t) const;
  // True when every node of `coarse` appears in this grid.
  bool refines(const TimeGrid& coarse) const;

  bool operator==(const TimeGrid& other) const { return nodes_ == other.nodes_; }

 private:
  std::vector<double> nodes_;
};

}  // namespace martlab
