#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

#include "theta/numeric.hpp"

namespace theta {

// Neumaier's variant of Kahan summation, applied to real and imaginary parts
// independently. The result depends only on the order of add() calls.
class CompensatedSum {
 public:
  void add(Complex x) noexcept {
    accumulate(re_, cre_, x.real());
    accumulate(im_, cim_, x.imag());
  }
  Complex value() const noexcept { return {re_ + cre_, im_ + cim_}; }

 private:
  static void accumulate(double& sum, double& comp, double x) noexcept {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double re_ = 0.0, cre_ = 0.0;
  double im_ = 0.0, cim_ = 0.0;
};

/// Terms per shard. Fixed so the reduction tree never depends on the thread count.
inline constexpr std::size_t kShardSize = 2048;

/// Worker threads for shard evaluation: THETA_THREADS if set and positive,
/// otherwise std::thread::hardware_concurrency().
unsigned thread_count();

/// Sums term(0) + ... + term(count-1). Shards of kShardSize consecutive terms
/// are summed with CompensatedSum (possibly concurrently), then the shard
/// partials are combined in shard order. Bit-identical for any thread count.
Complex ordered_sum(std::size_t count, const std::function<Complex(std::size_t)>& term);

}  // namespace theta
