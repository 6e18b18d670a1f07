#pragma once

#include <vector>

#include "martlab/path.hpp"
#include "martlab/time_change.hpp"

namespace martlab {

// Cell ratios over the dyadic partition s_i = i*2^-n: the piecewise-constant
// density estimate psi_n with psi_n = (zeta increment)/(lambda increment)
// on cells where lambda increases, 0 on zero-increment cells.  Stored on
// the dyadic grid with each cell's ratio at its left node, so left-point
// Stieltjes sums against lambda reproduce zeta at the dyadic nodes exactly.
VecPath dyadic_ratio(const VecPath& zeta, const IncreasingFn& lambda, int n);

struct RnResult {
  VecPath phi;                           // psi at level n_max
  std::vector<unsigned char> converged;  // per node: levels n_max-1 -> n_max agree
};

// Density estimate at depth n_max with per-node convergence flags
// (|psi_{n_max} - psi_{n_max-1}| <= 1e-6 * (1 + |psi_{n_max}|)).
RnResult rn_derivative(const VecPath& zeta, const IncreasingFn& lambda,
                       int n_max);

struct MatrixRnResult {
  MatPath phi;
  std::vector<unsigned char> converged;
};

// Matrix density of a PSD-nondecreasing K against lambda: diagonal entries
// and (e_i+e_j)-quadratic forms estimated scalar-wise, off-diagonals
// recovered by polarization, then PSD projection on converged nodes.
MatrixRnResult matrix_rn(const MatPath& k, const IncreasingFn& lambda,
                         int n_max);

}  // namespace martlab
