#pragma once

#include <vector>

#include "martlab/ensemble.hpp"
#include "martlab/path.hpp"
#include "martlab/result_table.hpp"

namespace martlab {

// Modulus over the window set {(u,v): (v-r)+ <= u <= v <= t}:
// sup |f(v) - f(u)| over grid-node pairs.
double delta_u(const VecPath& f, double t, double r);

// Largest node-to-node increment norm up to time t.
double max_jump(const VecPath& f, double t);

// sup_{s <= t} |f(s)| over grid nodes.
double sup_norm(const VecPath& f, double t);

// Locally-uniform path metric sum_{m=1..ceil(T_max)} 2^-m (1 ^ sup_{s<=m}|f-g|);
// the discarded tail is bounded by 2^-ceil(T_max).
double metric_r(const VecPath& f, const VecPath& g);

// Exceedance surfaces for the two relative-compactness criteria across a
// family of ensembles: P{sup |path| > N} and P{delta_u(path; t, r) > eps},
// plus monotone-trend summary rows.  Rows are informational except the
// trend flags.
ResultTable tightness_report(const std::vector<Ensemble>& ensembles,
                             const std::vector<double>& labels, double t,
                             const std::vector<double>& n_grid,
                             const std::vector<double>& r_grid,
                             const std::vector<double>& eps_grid = {
                                 0.05, 0.1, 0.2, 0.5});

// Tail expectation curve L -> mean(|Y(t)-Y(0)|^2 ; |Y(t)-Y(0)|^2 > L).
// bracket = value +- 4 * stderr, for closed-form comparisons.
ResultTable ui_statistic(const Ensemble& ensemble, double t,
                         const std::vector<double>& l_grid);

struct LenglartResult {
  double lhs = 0.0;     // freq of sup_{s<=t} |Y(s)| >= l
  double rhs = 0.0;     // a/l^2 + freq of trace K(t) >= a
  double stderr_lhs = 0.0;
  bool holds = false;   // lhs <= rhs + 4 * stderr
};

LenglartResult lenglart_check(const Ensemble& ensemble, double t, double l,
                              double a);

}  // namespace martlab
