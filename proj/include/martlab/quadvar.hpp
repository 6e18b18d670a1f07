#pragma once

#include "martlab/path.hpp"

namespace martlab {

// Realized quadratic variation [Y](t) = sum of squared increments over the
// partition cells up to t; PSD and nondecreasing by construction.
MatPath realized_qv(const VecPath& y, const TimeGrid& partition);
MatPath realized_qv(const VecPath& y);  // partition = full path grid

// sup_{s <= t} op_norm(realized_qv(Y)(s) - K(s)) over grid nodes.
double qv_discrepancy(const VecPath& y, const MatPath& k, double t);

}  // namespace martlab
