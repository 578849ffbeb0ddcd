#pragma once

#include <cstdint>
#include <vector>

#include "theta/numeric.hpp"

namespace theta {

/// SplitMix64 (Steele, Lea & Flood). All randomness in the library and the
/// CLI goes through this generator so reports are reproducible from a seed.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t operator()() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>((*this)() % span);
  }

 private:
  std::uint64_t state_;
};

inline constexpr std::uint64_t kDefaultSampleSeed = 0x7E7A;

/// `count` points Z in C^n with |Re Z_i| <= re_bound and |Im Z_i| <= im_bound.
std::vector<ComplexVector> sample_points(int n, int count, std::uint64_t seed = kDefaultSampleSeed,
                                         double re_bound = 0.5, double im_bound = 0.3);

}  // namespace theta
