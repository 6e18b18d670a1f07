#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "martlab/parallel.hpp"
#include "martlab/path.hpp"

namespace martlab {

// Monte Carlo sample of one process law: per-stream Y paths plus the scalar
// trace of the quadratic characteristic (kept instead of the full matrix
// path to bound memory; experiments needing full K work per path).
struct Ensemble {
  TimeGrid grid;
  int dim = 1;
  std::vector<VecPath> paths;
  std::vector<VecPath> trk;

  std::size_t size() const { return paths.size(); }
};

// Fills slots 0..n-1 via make(stream, y, trk); work is partitioned across
// threads but each slot is written once, so output is thread-count
// independent.
inline Ensemble build_ensemble(
    std::size_t n, int threads, const TimeGrid& grid, int dim,
    const std::function<void(std::uint64_t, VecPath&, VecPath&)>& make) {
  Ensemble e;
  e.grid = grid;
  e.dim = dim;
  e.paths.resize(n);
  e.trk.resize(n);
  parallel_for(n, threads, [&](std::size_t i) {
    make(static_cast<std::uint64_t>(i), e.paths[i], e.trk[i]);
  });
  return e;
}

}  // namespace martlab
