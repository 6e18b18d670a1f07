#include "martlab/dist_compare.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "martlab/simulate.hpp"

namespace martlab {

FddSample fdd_sample(const Ensemble& ensemble,
                     const std::vector<double>& times,
                     bool include_characteristic) {
  if (times.empty()) throw std::invalid_argument("fdd_sample: no probe times");
  if (include_characteristic && ensemble.trk.size() != ensemble.size())
    throw std::invalid_argument("fdd_sample: ensemble carries no K paths");
  std::vector<std::size_t> idx(times.size());
  for (std::size_t i = 0; i < times.size(); ++i)
    idx[i] = ensemble.grid.index_of(times[i]);  // throws off-grid

  FddSample s;
  s.times = times;
  s.rows = ensemble.size();
  const std::size_t d = static_cast<std::size_t>(ensemble.dim);
  s.cols = d * times.size() +
           (include_characteristic ? times.size() : 0);
  s.data.resize(s.rows * s.cols);
  for (std::size_t i = 0; i < s.rows; ++i) {
    double* out = s.data.data() + i * s.cols;
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      const auto v = ensemble.paths[i].at(idx[ti]);
      for (std::size_t c = 0; c < d; ++c) *out++ = v[c];
    }
    if (include_characteristic)
      for (std::size_t ti = 0; ti < times.size(); ++ti)
        *out++ = ensemble.trk[i].at(idx[ti])[0];
  }
  return s;
}

namespace {

double row_dist(const double* a, const double* b, std::size_t cols) {
  double s = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    const double d = a[c] - b[c];
    s += d * d;
  }
  return std::sqrt(s);
}

// T * (m^2) for equal halves is affine in (sum of A row-sums, S_AA); the
// general unequal-size form below keeps the three means explicit.
double energy_from_sums(double s_ab, double s_aa, double s_bb, std::size_t na,
                        std::size_t nb) {
  const double fa = static_cast<double>(na);
  const double fb = static_cast<double>(nb);
  return 2.0 * s_ab / (fa * fb) - s_aa / (fa * fa) - s_bb / (fb * fb);
}

struct PooledDistances {
  std::size_t n = 0;
  std::vector<double> d;      // n x n, zero diagonal
  std::vector<double> row_sum;
  double total = 0.0;

  double stat_for(const std::vector<std::size_t>& a_idx, std::size_t nb) const {
    double s_aa = 0.0, r_a = 0.0;
    for (std::size_t i : a_idx) {
      r_a += row_sum[i];
      const double* di = d.data() + i * n;
      for (std::size_t j : a_idx) s_aa += di[j];
    }
    const double s_ab = r_a - s_aa;
    const double s_bb = total - 2.0 * s_ab - s_aa;
    return energy_from_sums(s_ab, s_aa, s_bb, a_idx.size(), nb);
  }
};

// 1-d fast path: with pooled values sorted once, per-assignment sums need a
// single pass (sum |x_i - x_j| over a set = sum_k (2k - m + 1) x_(k)).
struct SortedPool {
  std::vector<double> x;        // sorted pooled values
  std::vector<double> row_sum;  // sum_j |x_i - x_j| per sorted index
  double total = 0.0;

  void build(std::vector<double> values) {
    x = std::move(values);
    std::sort(x.begin(), x.end());
    const std::size_t n = x.size();
    row_sum.resize(n);
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];
    for (std::size_t i = 0; i < n; ++i) {
      const double fi = static_cast<double>(i);
      const double left = fi * x[i] - prefix[i];
      const double right = (prefix[n] - prefix[i + 1]) -
                           static_cast<double>(n - 1 - i) * x[i];
      row_sum[i] = left + right;
      total += row_sum[i];
    }
  }

  double stat_for(const std::vector<unsigned char>& in_a, std::size_t na,
                  std::size_t nb) const {
    double r_a = 0.0, s_aa_half = 0.0, pre_sum = 0.0;
    std::size_t pre_count = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!in_a[i]) continue;
      r_a += row_sum[i];
      s_aa_half += static_cast<double>(pre_count) * x[i] - pre_sum;
      pre_sum += x[i];
      ++pre_count;
    }
    const double s_aa = 2.0 * s_aa_half;
    const double s_ab = r_a - s_aa;
    const double s_bb = total - 2.0 * s_ab - s_aa;
    return energy_from_sums(s_ab, s_aa, s_bb, na, nb);
  }
};

}  // namespace

double energy_statistic(const FddSample& a, const FddSample& b) {
  if (a.cols != b.cols)
    throw std::invalid_argument("energy: dimension mismatch");
  if (a.rows == 0 || b.rows == 0)
    throw std::invalid_argument("energy: empty sample");
  double s_ab = 0.0, s_aa = 0.0, s_bb = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < b.rows; ++j)
      s_ab += row_dist(a.row(i), b.row(j), a.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = i + 1; j < a.rows; ++j)
      s_aa += 2.0 * row_dist(a.row(i), a.row(j), a.cols);
  for (std::size_t i = 0; i < b.rows; ++i)
    for (std::size_t j = i + 1; j < b.rows; ++j)
      s_bb += 2.0 * row_dist(b.row(i), b.row(j), b.cols);
  return energy_from_sums(s_ab, s_aa, s_bb, a.rows, b.rows);
}

TestResult energy_test(const FddSample& a, const FddSample& b, int n_perm,
                       NoiseSeed seed) {
  if (a.cols != b.cols)
    throw std::invalid_argument("energy_test: dimension mismatch");
  if (n_perm < 199)
    throw std::invalid_argument("energy_test: n_perm < 199 lacks power");
  const std::size_t na = a.rows, nb = b.rows, n = na + nb;
  if (na == 0 || nb == 0)
    throw std::invalid_argument("energy_test: empty sample");

  double observed = 0.0;
  std::size_t exceed = 0;

  if (a.cols == 1) {
    std::vector<double> pooled(n);
    for (std::size_t i = 0; i < na; ++i) pooled[i] = a.data[i];
    for (std::size_t i = 0; i < nb; ++i) pooled[na + i] = b.data[i];
    SortedPool pool;
    pool.build(pooled);
    // map original positions to sorted positions for the observed split
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      return pooled[i] < pooled[j];
    });
    std::vector<unsigned char> in_a(n, 0);
    for (std::size_t s = 0; s < n; ++s) in_a[s] = order[s] < na ? 1 : 0;
    observed = pool.stat_for(in_a, na, nb);
    std::vector<std::size_t> pick(n);
    for (int p = 0; p < n_perm; ++p) {
      CounterRng rng(seed, sub::kPermute + static_cast<std::uint64_t>(p));
      std::iota(pick.begin(), pick.end(), std::size_t{0});
      for (std::size_t i = 0; i < na; ++i) {
        const std::size_t j = i + rng.next_below(n - i);
        std::swap(pick[i], pick[j]);
      }
      std::fill(in_a.begin(), in_a.end(), 0);
      // a uniform na-subset of sorted positions has the same law as one of
      // original positions, which is all the permutation null needs
      for (std::size_t i = 0; i < na; ++i) in_a[pick[i]] = 1;
      if (pool.stat_for(in_a, na, nb) >= observed) ++exceed;
    }
  } else {
    PooledDistances pool;
    pool.n = n;
    pool.d.assign(n * n, 0.0);
    std::vector<const double*> rows(n);
    for (std::size_t i = 0; i < na; ++i) rows[i] = a.row(i);
    for (std::size_t i = 0; i < nb; ++i) rows[na + i] = b.row(i);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = row_dist(rows[i], rows[j], a.cols);
        pool.d[i * n + j] = v;
        pool.d[j * n + i] = v;
      }
    pool.row_sum.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) pool.row_sum[i] += pool.d[i * n + j];
    pool.total = std::accumulate(pool.row_sum.begin(), pool.row_sum.end(), 0.0);

    std::vector<std::size_t> a_idx(na);
    std::iota(a_idx.begin(), a_idx.end(), std::size_t{0});
    observed = pool.stat_for(a_idx, nb);

    std::vector<std::size_t> pick(n);
    for (int p = 0; p < n_perm; ++p) {
      CounterRng rng(seed, sub::kPermute + static_cast<std::uint64_t>(p));
      std::iota(pick.begin(), pick.end(), std::size_t{0});
      for (std::size_t i = 0; i < na; ++i) {
        const std::size_t j = i + rng.next_below(n - i);
        std::swap(pick[i], pick[j]);
      }
      a_idx.assign(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(na));
      if (pool.stat_for(a_idx, nb) >= observed) ++exceed;
    }
  }
  TestResult r;
  r.statistic = observed;
  r.p_value = (1.0 + static_cast<double>(exceed)) /
              (static_cast<double>(n_perm) + 1.0);
  return r;
}

TestResult ks_1d(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_1d: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  const double ne = na * nb / (na + nb);
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  double p = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 101; ++k) {
    p += sign * 2.0 * std::exp(-2.0 * lambda * lambda *
                               static_cast<double>(k) *
                               static_cast<double>(k));
    sign = -sign;
  }
  p = std::clamp(p, 0.0, 1.0);
  return {d, p};
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("normal_quantile: p must be in (0,1)");
  // Acklam's rational approximation
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
          c[5]) /
        ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
  }
  // one Newton refinement against the exact CDF
  const double e = normal_cdf(x) - p;
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  return x - e / pdf;
}

}  // namespace martlab
