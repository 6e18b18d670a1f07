#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace martlab {

// Identifies one noise stream within an ensemble.
struct NoiseSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

namespace detail {

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

// splitmix64 step: advance by the golden gamma, then finalize.
inline std::uint64_t mix64(std::uint64_t z) {
  z += kGamma;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Counter-based generator: output is a pure function of
// (seed, stream, substream, counter), so paths can be generated by any
// number of workers in any order with identical results.  Equivalent to
// evaluating a splitmix64 sequence keyed by the mixed identifiers.
class CounterRng {
 public:
  explicit CounterRng(NoiseSeed s, std::uint64_t substream = 0)
      : key_(detail::mix64(detail::mix64(detail::mix64(s.seed) ^ s.stream) ^
                           substream)) {}

  std::uint64_t next_u64() {
    return detail::mix64(key_ + detail::kGamma * counter_++);
  }

  // Uniform on the open interval (0,1); safe inside log().
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; always consumes exactly two words,
  // so counter advance per draw never depends on call history.
  double next_normal() {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Uniform integer in [0, n); fixed one-word consumption
  // (multiply-shift map; bias is O(n/2^64)).
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace martlab
