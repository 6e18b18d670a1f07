#pragma once

#include <cstddef>
#include <vector>

#include "martlab/path.hpp"
#include "martlab/time_change.hpp"

namespace martlab {

// Nonnegative density g on [0,1] with g(0)=0 and unit mass, sampled on a
// uniform grid and interpolated linearly.
struct MollifierKernel {
  std::vector<double> samples;

  // g(u) = 6u(1-u), rescaled so the trapezoid mass is exactly 1.
  static MollifierKernel standard(std::size_t n_nodes = 513);

  double eval(double u) const;  // 0 outside [0,1]
  double mass() const;          // composite trapezoid of the samples
  void validate() const;
};

// Left-point Ito sum Z(t) = sum over partition cells of
// R(cell left endpoint) * (S increment), including the partial cell at t.
// R and S share a grid that refines `partition`.
VecPath ito_left_sum(const MatPath& r, const VecPath& s,
                     const TimeGrid& partition);

// Pathwise Stieltjes composition K(t) = sum phi(left endpoint) * d(lambda).
MatPath stieltjes_compose(const MatPath& phi, const IncreasingFn& lambda);
VecPath stieltjes_compose(const VecPath& phi, const IncreasingFn& lambda);

// Mollification H_n(t) = integral_0^t H(t-s) g_n(s) ds with g_n(s) = n g(ns),
// by composite trapezoid over the path grid refined with the kernel's own
// breakpoints (so convolving a constant with the unit-mass kernel is exact).
MatPath mollify(const MatPath& h, int n, const MollifierKernel& kernel);

}  // namespace martlab
