#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "martlab/linalg.hpp"
#include "martlab/path.hpp"
#include "martlab/rng.hpp"
#include "martlab/time_change.hpp"

namespace martlab {

// Substream labels keeping the independent noise sources of one path
// (Wiener driver, initial value, characteristic generator, perturbation)
// on disjoint counter ranges.
namespace sub {
inline constexpr std::uint64_t kWiener = 1;
inline constexpr std::uint64_t kY0 = 2;
inline constexpr std::uint64_t kPhi = 3;
inline constexpr std::uint64_t kPerturb = 4;
inline constexpr std::uint64_t kPermute = 100;  // base for shuffle streams
}  // namespace sub

enum class IncrementKind { Gaussian, TwoPoint };

// Law of the initial value Y(0), drawn from a stream independent of the
// Wiener driver.
class Y0Sampler {
 public:
  enum class Law { Constant, Gaussian, TwoPoint };

  static Y0Sampler constant(std::vector<double> value);
  static Y0Sampler gaussian(std::vector<double> mean, double sd);
  static Y0Sampler two_point(std::vector<double> a, std::vector<double> b,
                             double p);

  int dim() const { return static_cast<int>(a_.size()); }
  std::vector<double> draw(CounterRng& rng) const;

 private:
  Law law_ = Law::Constant;
  std::vector<double> a_, b_;
  double sd_ = 0.0, p_ = 0.5;
};

// Random PSD-valued process Phi(s), generated causally from an auxiliary
// per-step driver sequence (normals, or uniforms for the regime switch).
// Phi(s_k) depends only on driver entries with index < k.
class PhiGenerator {
 public:
  enum class Model { Constant, ScalarDiffusion, RegimeSwitch, DriverFunctional };

  static PhiGenerator constant(const SymMatrix& phi0);
  // sigmoid-squashed Ornstein-Uhlenbeck factor in [v_lo, v_hi] times base
  static PhiGenerator scalar_diffusion(int d, double v_lo, double v_hi,
                                       double kappa, double eta,
                                       const SymMatrix& base);
  // cyclic Markov chain over scalar levels times base
  static PhiGenerator regime_switch(int d, double rate,
                                    std::vector<double> levels,
                                    const SymMatrix& base);
  // factor in [v_lo, v_hi] from a causal map of a Brownian driver D:
  // sigmoid(alpha*D(s) + beta*max_{u<=s} D(u) + gamma*sin(2*pi*s)) times base
  static PhiGenerator driver_functional(int d, double v_lo, double v_hi,
                                        double alpha, double beta, double gamma,
                                        const SymMatrix& base);

  // (1-c)I + c*ones: the default correlated PSD direction.
  static SymMatrix correlated_base(int d, double c = 0.3);

  int dim() const { return dim_; }
  Model model() const { return model_; }
  std::size_t driver_words(const TimeGrid& grid) const;
  MatPath from_driver(const TimeGrid& grid, std::span<const double> driver) const;
  MatPath generate(const TimeGrid& grid, CounterRng& rng) const;

 private:
  Model model_ = Model::Constant;
  int dim_ = 1;
  SymMatrix base_{1};
  double v_lo_ = 0.0, v_hi_ = 1.0;
  double kappa_ = 1.0, eta_ = 1.0, rate_ = 1.0;
  double alpha_ = 1.0, beta_ = 0.0, gamma_ = 0.0;
  std::vector<double> levels_;
};

// Standard d-dimensional Wiener path sampled on the grid.
VecPath sample_brownian(int d, const TimeGrid& grid, NoiseSeed seed,
                        std::uint64_t substream = sub::kWiener);

// Centered independent increments with per-step covariance
// (T(t_{i+1}) - T(t_i)) * I, Gaussian or scaled two-point.
VecPath sample_indep_increments(const IncreasingFn& t_fn, int d,
                                const TimeGrid& grid, NoiseSeed seed,
                                IncrementKind kind = IncrementKind::Gaussian,
                                std::uint64_t substream = sub::kWiener);

struct MartingalePair {
  VecPath y;  // the constructed continuous local martingale (plus Y(0))
  MatPath k;  // its quadratic characteristic K = Phi o Lambda
};

// Full construction: Y(t) = Y(0) + X(Lambda(t)) with X = H . w,
// H(s) = sqrt(Phi)(Lambda_dagger(s)), w a Wiener process on the image time
// axis.  Conditional increment covariance over a grid cell equals the K
// increment exactly, and Y is constant across Lambda plateaus.
MartingalePair construct_martingale(const Y0Sampler& y0, const PhiGenerator& phigen,
                                    const IncreasingFn& lambda,
                                    const TimeGrid& grid, NoiseSeed seed);

// Y + eps * W0 with W0 independent Gaussian increments of variance
// d(lambda) * I, drawn from the dedicated perturbation substream.
VecPath epsilon_perturb(const VecPath& y, const IncreasingFn& lambda,
                        double eps, NoiseSeed seed);

}  // namespace martlab
