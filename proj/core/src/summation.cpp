#include "theta/summation.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace theta {

unsigned thread_count() {
  if (const char* env = std::getenv("THETA_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Complex ordered_sum(std::size_t count, const std::function<Complex(std::size_t)>& term) {
  const std::size_t shards = (count + kShardSize - 1) / kShardSize;
  std::vector<Complex> partial(shards);

  auto run_shard = [&](std::size_t s) {
    CompensatedSum acc;
    const std::size_t end = std::min(count, (s + 1) * kShardSize);
    for (std::size_t i = s * kShardSize; i < end; ++i) acc.add(term(i));
    partial[s] = acc.value();
  };

  const unsigned workers = std::min<std::size_t>(thread_count(), shards);
  if (workers <= 1) {
    for (std::size_t s = 0; s < shards; ++s) run_shard(s);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t s = w; s < shards; s += workers) run_shard(s);
      });
    }
    for (auto& t : pool) t.join();
  }

  CompensatedSum total;
  for (const Complex& p : partial) total.add(p);
  return total.value();
}

}  // namespace theta

#include "theta/random.hpp"

namespace theta {

std::vector<ComplexVector> sample_points(int n, int count, std::uint64_t seed, double re_bound,
                                         double im_bound) {
  SplitMix64 rng(seed);
  std::vector<ComplexVector> pts;
  pts.reserve(count);
  for (int c = 0; c < count; ++c) {
    ComplexVector z(n);
    for (int i = 0; i < n; ++i) {
      const double re = rng.uniform(-re_bound, re_bound);
      const double im = rng.uniform(-im_bound, im_bound);
      z(i) = Complex(re, im);
    }
    pts.push_back(std::move(z));
  }
  return pts;
}

}  // namespace theta
