#include "martlab/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "martlab/linalg.hpp"

namespace martlab {

MollifierKernel MollifierKernel::standard(std::size_t n_nodes) {
  if (n_nodes < 3) throw std::invalid_argument("MollifierKernel: too few nodes");
  MollifierKernel k;
  k.samples.resize(n_nodes);
  const double h = 1.0 / static_cast<double>(n_nodes - 1);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const double u = static_cast<double>(i) * h;
    k.samples[i] = 6.0 * u * (1.0 - u);
  }
  const double m = k.mass();
  for (double& v : k.samples) v /= m;
  return k;
}

double MollifierKernel::eval(double u) const {
  if (u <= 0.0 || u >= 1.0) {
    // endpoints: sample values (support edge), outside: 0
    if (u == 0.0) return samples.front();
    if (u == 1.0) return samples.back();
    return 0.0;
  }
  const double h = 1.0 / static_cast<double>(samples.size() - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(u / h),
                                 samples.size() - 2);
  const double w = (u - static_cast<double>(i) * h) / h;
  return samples[i] + w * (samples[i + 1] - samples[i]);
}

double MollifierKernel::mass() const {
  const double h = 1.0 / static_cast<double>(samples.size() - 1);
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    m += 0.5 * h * (samples[i] + samples[i + 1]);
  return m;
}

void MollifierKernel::validate() const {
  if (samples.size() < 3)
    throw std::invalid_argument("MollifierKernel: too few samples");
  for (double v : samples)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("MollifierKernel: samples must be >= 0");
  if (samples.front() != 0.0)
    throw std::invalid_argument("MollifierKernel: g(0) must be 0");
  if (std::abs(mass() - 1.0) > 1e-10)
    throw std::invalid_argument("MollifierKernel: mass must be 1");
}

namespace {

// For each fine cell of `fine`, the fine-grid node index of the left
// endpoint of the partition cell containing it.
std::vector<std::size_t> partition_left_index(const TimeGrid& fine,
                                              const TimeGrid& partition) {
  if (!fine.refines(partition))
    throw std::invalid_argument("partition is not a sub-grid of the path grid");
  std::vector<std::size_t> left(fine.size() - 1);
  std::size_t p = 0;
  std::size_t p_idx = fine.index_of(partition[0]);
  for (std::size_t k = 0; k + 1 < fine.size(); ++k) {
    while (p + 1 < partition.size() &&
           partition[p + 1] <= fine[k] + 1e-9 * (1.0 + std::abs(fine[k]))) {
      ++p;
      p_idx = fine.index_of(partition[p]);
    }
    left[k] = p_idx;
  }
  return left;
}

}  // namespace

VecPath ito_left_sum(const MatPath& r, const VecPath& s,
                     const TimeGrid& partition) {
  if (!(r.grid == s.grid) || r.dim != s.dim)
    throw std::invalid_argument("ito_left_sum: R and S must share a grid");
  const auto left = partition_left_index(s.grid, partition);
  VecPath z(s.grid, s.dim, PathKind::ContinuousLinear);
  const int d = s.dim;
  std::vector<double> ds(static_cast<std::size_t>(d));
  std::vector<double> acc(static_cast<std::size_t>(d), 0.0);
  std::vector<double> tmp(static_cast<std::size_t>(d));
  for (std::size_t k = 0; k + 1 < s.grid.size(); ++k) {
    const auto lo = s.at(k);
    const auto hi = s.at(k + 1);
    for (int i = 0; i < d; ++i) ds[i] = hi[i] - lo[i];
    r.at(left[k]).matvec(ds, tmp);
    for (int i = 0; i < d; ++i) acc[i] += tmp[i];
    auto out = z.at(k + 1);
    for (int i = 0; i < d; ++i) out[i] = acc[i];
  }
  return z;
}

MatPath stieltjes_compose(const MatPath& phi, const IncreasingFn& lambda) {
  MatPath k(phi.grid, phi.dim, PathKind::ContinuousLinear);
  SymMatrix acc(phi.dim);
  for (std::size_t j = 0; j + 1 < phi.grid.size(); ++j) {
    const double dl = lambda(phi.grid[j + 1]) - lambda(phi.grid[j]);
    SymMatrix step = phi.at(j);
    step *= dl;
    acc += step;
    k.set(j + 1, acc);
  }
  return k;
}

VecPath stieltjes_compose(const VecPath& phi, const IncreasingFn& lambda) {
  VecPath k(phi.grid, phi.dim, PathKind::ContinuousLinear);
  std::vector<double> acc(static_cast<std::size_t>(phi.dim), 0.0);
  for (std::size_t j = 0; j + 1 < phi.grid.size(); ++j) {
    const double dl = lambda(phi.grid[j + 1]) - lambda(phi.grid[j]);
    const auto v = phi.at(j);
    for (int i = 0; i < phi.dim; ++i) acc[i] += v[i] * dl;
    auto out = k.at(j + 1);
    for (int i = 0; i < phi.dim; ++i) out[i] = acc[i];
  }
  return k;
}

MatPath mollify(const MatPath& h, int n, const MollifierKernel& kernel) {
  if (n < 1) throw std::invalid_argument("mollify: n must be >= 1");
  kernel.validate();
  const double inv_n = 1.0 / static_cast<double>(n);
  const std::size_t kn = kernel.samples.size();
  MatPath out(h.grid, h.dim, PathKind::ContinuousLinear);

  std::vector<double> s_nodes;
  for (std::size_t k = 1; k < h.grid.size(); ++k) {
    const double t = h.grid[k];
    const double upper = std::min(t, inv_n);
    s_nodes.clear();
    s_nodes.push_back(0.0);
    for (std::size_t j = 1; j < h.grid.size() && h.grid[j] < upper; ++j)
      s_nodes.push_back(h.grid[j]);
    for (std::size_t j = 1; j + 1 < kn; ++j) {
      const double s = static_cast<double>(j) / static_cast<double>(kn - 1) *
                       inv_n;
      if (s < upper) s_nodes.push_back(s);
    }
    s_nodes.push_back(upper);
    std::sort(s_nodes.begin(), s_nodes.end());
    s_nodes.erase(std::unique(s_nodes.begin(), s_nodes.end()), s_nodes.end());

    SymMatrix acc(h.dim);
    SymMatrix f_lo = h.eval(t);  // s = 0: H(t) * g_n(0)
    double g_lo = static_cast<double>(n) * kernel.eval(0.0);
    for (std::size_t j = 0; j + 1 < s_nodes.size(); ++j) {
      const double s1 = s_nodes[j + 1];
      SymMatrix f_hi = h.eval(t - s1);
      const double g_hi = static_cast<double>(n) *
                          kernel.eval(static_cast<double>(n) * s1);
      const double w = 0.5 * (s1 - s_nodes[j]);
      for (int a = 0; a < h.dim; ++a)
        for (int b = a; b < h.dim; ++b)
          acc.set(a, b,
                  acc(a, b) + w * (f_lo(a, b) * g_lo + f_hi(a, b) * g_hi));
      f_lo = f_hi;
      g_lo = g_hi;
    }
    out.set(k, acc);
  }
  return out;
}

}  // namespace martlab
