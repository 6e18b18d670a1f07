#include "martlab/quadvar.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "martlab/linalg.hpp"

namespace martlab {

MatPath realized_qv(const VecPath& y, const TimeGrid& partition) {
  if (!y.grid.refines(partition))
    throw std::invalid_argument("realized_qv: partition not a sub-grid");
  MatPath qv(partition, y.dim, PathKind::ContinuousLinear);
  SymMatrix acc(y.dim);
  std::vector<double> dy(static_cast<std::size_t>(y.dim));
  std::size_t prev = y.grid.index_of(partition[0]);
  for (std::size_t i = 1; i < partition.size(); ++i) {
    const std::size_t cur = y.grid.index_of(partition[i]);
    const auto lo = y.at(prev);
    const auto hi = y.at(cur);
    for (int a = 0; a < y.dim; ++a) dy[a] = hi[a] - lo[a];
    acc += SymMatrix::outer(dy);
    qv.set(i, acc);
    prev = cur;
  }
  return qv;
}

MatPath realized_qv(const VecPath& y) { return realized_qv(y, y.grid); }

double qv_discrepancy(const VecPath& y, const MatPath& k, double t) {
  if (!(y.grid == k.grid) || y.dim != k.dim)
    throw std::invalid_argument("qv_discrepancy: Y and K must share a grid");
  const MatPath qv = realized_qv(y);
  double worst = 0.0;
  const double tol = 1e-9 * (1.0 + std::abs(t));
  for (std::size_t i = 0; i < y.grid.size(); ++i) {
    if (y.grid[i] > t + tol) break;
    SymMatrix diff = qv.at(i);
    diff -= k.at(i);
    worst = std::max(worst, op_norm(diff));
  }
  return worst;
}

}  // namespace martlab
