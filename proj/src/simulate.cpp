#include "martlab/simulate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "martlab/integrate.hpp"

namespace martlab {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_dim_range(int d) {
  if (d < 1 || d > SymMatrix::kMaxDim)
    throw std::invalid_argument("simulate: dim out of range");
}

}  // namespace

Y0Sampler Y0Sampler::constant(std::vector<double> value) {
  if (value.empty()) throw std::invalid_argument("Y0Sampler: empty value");
  Y0Sampler s;
  s.law_ = Law::Constant;
  s.a_ = std::move(value);
  return s;
}

Y0Sampler Y0Sampler::gaussian(std::vector<double> mean, double sd) {
  if (mean.empty() || sd < 0.0)
    throw std::invalid_argument("Y0Sampler: bad gaussian parameters");
  Y0Sampler s;
  s.law_ = Law::Gaussian;
  s.a_ = std::move(mean);
  s.sd_ = sd;
  return s;
}

Y0Sampler Y0Sampler::two_point(std::vector<double> a, std::vector<double> b,
                               double p) {
  if (a.empty() || a.size() != b.size() || p < 0.0 || p > 1.0)
    throw std::invalid_argument("Y0Sampler: bad two-point parameters");
  Y0Sampler s;
  s.law_ = Law::TwoPoint;
  s.a_ = std::move(a);
  s.b_ = std::move(b);
  s.p_ = p;
  return s;
}

std::vector<double> Y0Sampler::draw(CounterRng& rng) const {
  switch (law_) {
    case Law::Constant:
      return a_;
    case Law::Gaussian: {
      std::vector<double> v = a_;
      for (double& x : v) x += sd_ * rng.next_normal();
      return v;
    }
    case Law::TwoPoint:
      return rng.next_uniform() < p_ ? a_ : b_;
  }
  throw std::logic_error("Y0Sampler: unreachable");
}

SymMatrix PhiGenerator::correlated_base(int d, double c) {
  check_dim_range(d);
  if (c < 0.0 || c >= 1.0)
    throw std::invalid_argument("correlated_base: c must be in [0,1)");
  SymMatrix b(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) b.set(i, j, i == j ? 1.0 : c);
  return b;
}

PhiGenerator PhiGenerator::constant(const SymMatrix& phi0) {
  PsdMatrix check(phi0);  // validates PSD within tolerance
  PhiGenerator g;
  g.model_ = Model::Constant;
  g.dim_ = phi0.dim();
  g.base_ = phi0;
  return g;
}

PhiGenerator PhiGenerator::scalar_diffusion(int d, double v_lo, double v_hi,
                                            double kappa, double eta,
                                            const SymMatrix& base) {
  check_dim_range(d);
  if (base.dim() != d || v_lo < 0.0 || v_hi < v_lo || kappa < 0.0 || eta < 0.0)
    throw std::invalid_argument("scalar_diffusion: bad parameters");
  PsdMatrix check(base);
  PhiGenerator g;
  g.model_ = Model::ScalarDiffusion;
  g.dim_ = d;
  g.base_ = base;
  g.v_lo_ = v_lo;
  g.v_hi_ = v_hi;
  g.kappa_ = kappa;
  g.eta_ = eta;
  return g;
}

PhiGenerator PhiGenerator::regime_switch(int d, double rate,
                                         std::vector<double> levels,
                                         const SymMatrix& base) {
  check_dim_range(d);
  if (base.dim() != d || rate < 0.0 || levels.empty())
    throw std::invalid_argument("regime_switch: bad parameters");
  for (double l : levels)
    if (!(l >= 0.0)) throw std::invalid_argument("regime_switch: level < 0");
  PsdMatrix check(base);
  PhiGenerator g;
  g.model_ = Model::RegimeSwitch;
  g.dim_ = d;
  g.base_ = base;
  g.rate_ = rate;
  g.levels_ = std::move(levels);
  return g;
}

PhiGenerator PhiGenerator::driver_functional(int d, double v_lo, double v_hi,
                                             double alpha, double beta,
                                             double gamma,
                                             const SymMatrix& base) {
  check_dim_range(d);
  if (base.dim() != d || v_lo < 0.0 || v_hi < v_lo)
    throw std::invalid_argument("driver_functional: bad parameters");
  PsdMatrix check(base);
  PhiGenerator g;
  g.model_ = Model::DriverFunctional;
  g.dim_ = d;
  g.base_ = base;
  g.v_lo_ = v_lo;
  g.v_hi_ = v_hi;
  g.alpha_ = alpha;
  g.beta_ = beta;
  g.gamma_ = gamma;
  return g;
}

std::size_t PhiGenerator::driver_words(const TimeGrid& grid) const {
  return model_ == Model::Constant ? 0 : grid.size() - 1;
}

MatPath PhiGenerator::from_driver(const TimeGrid& grid,
                                  std::span<const double> driver) const {
  if (driver.size() != driver_words(grid))
    throw std::invalid_argument("PhiGenerator: driver length mismatch");
  MatPath phi(grid, dim_, PathKind::CadlagConstant);
  const std::size_t n = grid.size();
  switch (model_) {
    case Model::Constant: {
      for (std::size_t k = 0; k < n; ++k) phi.set(k, base_);
      break;
    }
    case Model::ScalarDiffusion: {
      double u = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double v = v_lo_ + (v_hi_ - v_lo_) * sigmoid(u);
        SymMatrix m = base_;
        m *= v;
        phi.set(k, m);
        if (k + 1 < n) {
          const double dt = grid[k + 1] - grid[k];
          u += -kappa_ * u * dt + eta_ * std::sqrt(dt) * driver[k];
        }
      }
      break;
    }
    case Model::RegimeSwitch: {
      std::size_t state = 0;
      for (std::size_t k = 0; k < n; ++k) {
        SymMatrix m = base_;
        m *= levels_[state];
        phi.set(k, m);
        if (k + 1 < n) {
          const double dt = grid[k + 1] - grid[k];
          if (driver[k] < -std::expm1(-rate_ * dt))
            state = (state + 1) % levels_.size();
        }
      }
      break;
    }
    case Model::DriverFunctional: {
      double d_val = 0.0, d_max = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double v =
            v_lo_ + (v_hi_ - v_lo_) *
                        sigmoid(alpha_ * d_val + beta_ * d_max +
                                gamma_ * std::sin(2.0 * std::numbers::pi *
                                                  grid[k]));
        SymMatrix m = base_;
        m *= v;
        phi.set(k, m);
        if (k + 1 < n) {
          d_val += std::sqrt(grid[k + 1] - grid[k]) * driver[k];
          d_max = std::max(d_max, d_val);
        }
      }
      break;
    }
  }
  return phi;
}

MatPath PhiGenerator::generate(const TimeGrid& grid, CounterRng& rng) const {
  std::vector<double> driver(driver_words(grid));
  if (model_ == Model::RegimeSwitch) {
    for (double& x : driver) x = rng.next_uniform();
  } else {
    for (double& x : driver) x = rng.next_normal();
  }
  return from_driver(grid, driver);
}

VecPath sample_brownian(int d, const TimeGrid& grid, NoiseSeed seed,
                        std::uint64_t substream) {
  check_dim_range(d);
  CounterRng rng(seed, substream);
  VecPath w(grid, d, PathKind::ContinuousLinear);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double sd = std::sqrt(grid[k + 1] - grid[k]);
    const auto lo = w.at(k);
    auto hi = w.at(k + 1);
    for (int i = 0; i < d; ++i) hi[i] = lo[i] + sd * rng.next_normal();
  }
  return w;
}

VecPath sample_indep_increments(const IncreasingFn& t_fn, int d,
                                const TimeGrid& grid, NoiseSeed seed,
                                IncrementKind kind, std::uint64_t substream) {
  check_dim_range(d);
  CounterRng rng(seed, substream);
  VecPath s(grid, d, PathKind::ContinuousLinear);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    double dv = t_fn(grid[k + 1]) - t_fn(grid[k]);
    if (dv < -1e-12 * (1.0 + std::abs(t_fn(grid[k]))))
      throw std::invalid_argument("sample_indep_increments: T decreasing");
    dv = std::max(dv, 0.0);
    const double sd = std::sqrt(dv);
    const auto lo = s.at(k);
    auto hi = s.at(k + 1);
    for (int i = 0; i < d; ++i) {
      const double step = kind == IncrementKind::Gaussian
                              ? sd * rng.next_normal()
                              : ((rng.next_u64() >> 63) ? sd : -sd);
      hi[i] = lo[i] + step;
    }
  }
  return s;
}

MartingalePair construct_martingale(const Y0Sampler& y0,
                                    const PhiGenerator& phigen,
                                    const IncreasingFn& lambda,
                                    const TimeGrid& grid, NoiseSeed seed) {
  const int d = phigen.dim();
  if (y0.dim() != d)
    throw std::invalid_argument("construct_martingale: Y(0)/Phi dim mismatch");
  if (std::abs(lambda.t_max() - grid.t_max()) > 1e-9 * (1.0 + grid.t_max()))
    throw std::invalid_argument("construct_martingale: grid does not span lambda");

  CounterRng rng_y0(seed, sub::kY0);
  const std::vector<double> start = y0.draw(rng_y0);

  CounterRng rng_phi(seed, sub::kPhi);
  MatPath phi = phigen.generate(grid, rng_phi);

  MatPath k = stieltjes_compose(phi, lambda);

  // Y(t_{j+1}) = Y(t_j) + Theta(t_j) * dw over the image cell; plateau cells
  // of lambda contribute nothing, so Y "skips" them exactly.
  CounterRng rng_w(seed, sub::kWiener);
  VecPath y(grid, d, PathKind::ContinuousLinear);
  std::vector<double> cur = start;
  std::vector<double> z(static_cast<std::size_t>(d));
  std::vector<double> step(static_cast<std::size_t>(d));
  {
    auto out = y.at(0);
    for (int i = 0; i < d; ++i) out[i] = cur[i];
  }
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    const double du = lambda(grid[j + 1]) - lambda(grid[j]);
    if (du > 0.0) {
      const SymMatrix theta = psd_sqrt(phi.at(j));
      const double sd = std::sqrt(du);
      for (int i = 0; i < d; ++i) z[i] = sd * rng_w.next_normal();
      theta.matvec(z, step);
      for (int i = 0; i < d; ++i) cur[i] += step[i];
    }
    auto out = y.at(j + 1);
    for (int i = 0; i < d; ++i) out[i] = cur[i];
  }
  return {std::move(y), std::move(k)};
}

VecPath epsilon_perturb(const VecPath& y, const IncreasingFn& lambda,
                        double eps, NoiseSeed seed) {
  if (!(eps > 0.0))
    throw std::invalid_argument("epsilon_perturb: eps must be > 0");
  const VecPath w0 = sample_indep_increments(lambda, y.dim, y.grid, seed,
                                             IncrementKind::Gaussian,
                                             sub::kPerturb);
  VecPath out = y;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] += eps * w0.values[i];
  return out;
}

}  // namespace martlab
