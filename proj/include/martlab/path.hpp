#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "martlab/grid.hpp"
#include "martlab/linalg.hpp"

namespace martlab {

// How node samples extend to a function of continuous time.
//   ContinuousLinear: linear interpolation between nodes.
//   CadlagConstant:   value v_k held on [t_k, t_{k+1}) (right-continuous),
//                     so left-endpoint Stieltjes sums see the value that
//                     rules the cell starting at that node.
enum class PathKind { ContinuousLinear, CadlagConstant };

// R^dim-valued sampled path; values row-major, node k at [k*dim, (k+1)*dim).
struct VecPath {
  TimeGrid grid;
  int dim = 1;
  PathKind kind = PathKind::ContinuousLinear;
  std::vector<double> values;

  VecPath() = default;
  VecPath(TimeGrid g, int d, PathKind k);

  std::size_t nodes() const { return grid.size(); }
  std::span<double> at(std::size_t k) {
    return {values.data() + k * dim, static_cast<std::size_t>(dim)};
  }
  std::span<const double> at(std::size_t k) const {
    return {values.data() + k * dim, static_cast<std::size_t>(dim)};
  }
  // Evaluate at arbitrary t in [0, t_max] according to `kind`.
  void eval(double t, std::span<double> out) const;
  double eval1(double t) const;  // dim-1 convenience

  void check_finite(const char* who) const;
};

// Symmetric-matrix-valued sampled path; node k stored as a row-major d*d
// block (kept exactly symmetric by construction).
struct MatPath {
  TimeGrid grid;
  int dim = 1;
  PathKind kind = PathKind::CadlagConstant;
  std::vector<double> values;

  MatPath() = default;
  MatPath(TimeGrid g, int d, PathKind k);

  std::size_t nodes() const { return grid.size(); }
  SymMatrix at(std::size_t k) const;
  void set(std::size_t k, const SymMatrix& m);
  SymMatrix eval(double t) const;
};

}  // namespace martlab
