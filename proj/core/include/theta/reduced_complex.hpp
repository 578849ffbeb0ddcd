#pragma once

#include <cstdint>
#include <vector>

#include "theta/random.hpp"

namespace theta {

/// Integer array on the box prod_q [lo_q, hi_q] (inclusive) in Z^k; values
/// outside the box are zero. Row-major with the last direction fastest.
class CoefficientArray {
 public:
  CoefficientArray() = default;
  CoefficientArray(std::vector<int> lo, std::vector<int> hi);
  /// The symmetric window [-w, w]^k.
  static CoefficientArray window(int k, int w);

  int k() const noexcept { return static_cast<int>(lo_.size()); }
  const std::vector<int>& lo() const noexcept { return lo_; }
  const std::vector<int>& hi() const noexcept { return hi_; }
  std::size_t size() const noexcept { return values_.size(); }

  bool contains(const std::vector<int>& K) const;
  /// Zero outside the box.
  std::int64_t at(const std::vector<int>& K) const;
  std::int64_t& operator[](const std::vector<int>& K);
  std::vector<int> point(std::size_t flat) const;
  std::size_t flat_index(const std::vector<int>& K) const;
  const std::vector<std::int64_t>& values() const noexcept { return values_; }

  CoefficientArray operator+(const CoefficientArray& o) const;
  friend bool operator==(const CoefficientArray& a, const CoefficientArray& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.values_ == b.values_;
  }

 private:
  std::vector<int> lo_, hi_;
  std::vector<std::int64_t> values_;
};

/// (a(K - e_q) - a(K)) on the same box; q is 0-based. Throws WindowOverflow
/// when a is nonzero on the upper face in direction q (the shifted support
/// would leave the box).
CoefficientArray shift_delta(const CoefficientArray& a, int q);

/// b with shift_delta(b, q) = a: for K_q >= 0, b(K) = -sum_{r=0}^{K_q} a(K - r e_q);
/// for K_q < 0, b(K) = sum of a over the coordinates K_q + 1 .. -1 along q.
/// Throws WindowOverflow if the box does not contain the origin slice along q.
CoefficientArray partial_sum_preimage(const CoefficientArray& a, int q);

/// max |b(K - e_q) - b(K) - a(K)| over the box cells whose predecessor along
/// q also lies in the box.
std::int64_t preimage_residual(const CoefficientArray& a, const CoefficientArray& b, int q);

/// Sum of all entries, the cokernel functional of the top differential.
std::int64_t total_sum(const CoefficientArray& a);

CoefficientArray random_array(int k, int w, int support_w, int max_abs, SplitMix64& rng);

/// The Koszul complex of the k commuting operators (sigma_q - 1) on finitely
/// supported arrays, truncated exactly: the component indexed by the
/// direction set S lives on prod_q [-w, w - 1 + [q in S]], so each applied
/// shift has room for exactly one step and the truncation is a tensor product
/// of injective one-dimensional maps.
struct ReducedComplex {
  int k = 0;
  int w = 0;
  /// Entries (row, col, value) of d^p : C^p -> C^{p+1}, p = 0..k-1.
  struct Sparse {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> by_row;
  };
  std::vector<std::size_t> dims;  // dim C^0 .. C^k
  std::vector<Sparse> d;

  static ReducedComplex build(int k, int w);
};

/// Exact rank over Q (sparse fraction elimination).
std::size_t exact_rank(const ReducedComplex::Sparse& m);

/// True iff d^{p+1} d^p = 0 for every p.
bool d_squared_zero(const ReducedComplex& c);

/// Betti numbers [H^0 .. H^k]. Throws WindowTooSmall if w < k + 2.
std::vector<std::size_t> cohomology_ranks(int k, int w);

/// Rank of (sigma_q - 1) from the box shrunk along q to [-w, w]^k; equals
/// the number of columns when the operator is injective.
struct InjectivityCheck {
  std::size_t rank = 0;
  std::size_t cols = 0;
};
InjectivityCheck shift_injectivity(int k, int w, int q);

}  // namespace theta
