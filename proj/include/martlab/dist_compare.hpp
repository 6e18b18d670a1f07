#pragma once

#include <cstddef>
#include <vector>

#include "martlab/ensemble.hpp"
#include "martlab/rng.hpp"

namespace martlab {

// Finite-dimensional sample: one row per path, the concatenation
// (Y(t_1),...,Y(t_l)), optionally followed by (trK(t_1),...,trK(t_l)).
struct FddSample {
  std::vector<double> times;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // rows x cols, row-major

  const double* row(std::size_t i) const { return data.data() + i * cols; }
};

// Probe times must be grid nodes; statistics never interpolate.
FddSample fdd_sample(const Ensemble& ensemble, const std::vector<double>& times,
                     bool include_characteristic);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Energy distance statistic 2 E||a-b|| - E||a-a'|| - E||b-b'|| (V-statistic
// means over all ordered pairs) with a permutation p-value; shuffles are a
// pure function of the seed, so p is reproducible and worker-independent.
TestResult energy_test(const FddSample& a, const FddSample& b, int n_perm,
                       NoiseSeed seed);

// Energy statistic alone (no permutations).
double energy_statistic(const FddSample& a, const FddSample& b);

// Two-sample Kolmogorov-Smirnov with the asymptotic p-value.
TestResult ks_1d(std::vector<double> a, std::vector<double> b);

// Standard normal CDF and quantile (Acklam's approximation plus one
// Newton step against erfc), used for closed-form Gaussian references.
double normal_cdf(double x);
double normal_quantile(double p);

}  // namespace martlab
