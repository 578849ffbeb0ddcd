#include "theta/reduced_complex.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "theta/errors.hpp"

namespace theta {

CoefficientArray::CoefficientArray(std::vector<int> lo, std::vector<int> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size()) throw Error(ErrorCode::ShapeMismatch, "box bounds differ in length");
  std::size_t count = 1;
  for (std::size_t q = 0; q < lo_.size(); ++q) {
    if (hi_[q] < lo_[q]) throw Error(ErrorCode::InvalidInput, "empty box");
    count *= static_cast<std::size_t>(hi_[q] - lo_[q] + 1);
  }
  values_.assign(count, 0);
}

CoefficientArray CoefficientArray::window(int k, int w) {
  return CoefficientArray(std::vector<int>(k, -w), std::vector<int>(k, w));
}

bool CoefficientArray::contains(const std::vector<int>& K) const {
  if (K.size() != lo_.size()) throw Error(ErrorCode::ShapeMismatch, "point has wrong dimension");
  for (std::size_t q = 0; q < K.size(); ++q)
    if (K[q] < lo_[q] || K[q] > hi_[q]) return false;
  return true;
}

std::size_t CoefficientArray::flat_index(const std::vector<int>& K) const {
  std::size_t idx = 0;
  for (std::size_t q = 0; q < K.size(); ++q) {
    idx = idx * static_cast<std::size_t>(hi_[q] - lo_[q] + 1) + static_cast<std::size_t>(K[q] - lo_[q]);
  }
  return idx;
}

std::vector<int> CoefficientArray::point(std::size_t flat) const {
  std::vector<int> K(lo_.size());
  for (std::size_t q = lo_.size(); q-- > 0;) {
    const auto len = static_cast<std::size_t>(hi_[q] - lo_[q] + 1);
    K[q] = lo_[q] + static_cast<int>(flat % len);
    flat /= len;
  }
  return K;
}

std::int64_t CoefficientArray::at(const std::vector<int>& K) const {
  return contains(K) ? values_[flat_index(K)] : 0;
}

std::int64_t& CoefficientArray::operator[](const std::vector<int>& K) {
  if (!contains(K)) throw Error(ErrorCode::WindowOverflow, "point outside the coefficient window");
  return values_[flat_index(K)];
}

CoefficientArray CoefficientArray::operator+(const CoefficientArray& o) const {
  if (lo_ != o.lo_ || hi_ != o.hi_) throw Error(ErrorCode::ShapeMismatch, "arrays live on different windows");
  CoefficientArray out = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] += o.values_[i];
  return out;
}

namespace {

void check_direction(const CoefficientArray& a, int q) {
  if (q < 0 || q >= a.k()) throw Error(ErrorCode::InvalidInput, "shift direction out of range");
}

}  // namespace

CoefficientArray shift_delta(const CoefficientArray& a, int q) {
  check_direction(a, q);
  CoefficientArray out(a.lo(), a.hi());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<int> K = a.point(i);
    if (K[q] == a.hi()[q] && a.values()[i] != 0) {
      throw Error(ErrorCode::WindowOverflow, "shifted support leaves the window");
    }
    const std::int64_t here = a.values()[i];
    K[q] -= 1;
    out[a.point(i)] = a.at(K) - here;
  }
  return out;
}

CoefficientArray partial_sum_preimage(const CoefficientArray& a, int q) {
  check_direction(a, q);
  if (a.lo()[q] > 0 || a.hi()[q] < 0) throw Error(ErrorCode::WindowOverflow, "window misses the origin slice");
  CoefficientArray out(a.lo(), a.hi());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::vector<int> K = a.point(i);
    std::vector<int> L = K;
    std::int64_t s = 0;
    if (K[q] >= 0) {
      for (int c = 0; c <= K[q]; ++c) {
        L[q] = c;
        s -= a.at(L);
      }
    } else {
      for (int c = K[q] + 1; c <= -1; ++c) {
        L[q] = c;
        s += a.at(L);
      }
    }
    out[K] = s;
  }
  return out;
}

std::int64_t preimage_residual(const CoefficientArray& a, const CoefficientArray& b, int q) {
  check_direction(a, q);
  std::int64_t worst = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::vector<int> K = b.point(i);
    if (K[q] == b.lo()[q]) continue;
    const std::int64_t here = b.values()[i];
    const std::int64_t target = a.at(K);
    K[q] -= 1;
    worst = std::max(worst, std::abs(b.at(K) - here - target));
  }
  return worst;
}

std::int64_t total_sum(const CoefficientArray& a) {
  std::int64_t s = 0;
  for (auto v : a.values()) s += v;
  return s;
}

CoefficientArray random_array(int k, int w, int support_w, int max_abs, SplitMix64& rng) {
  CoefficientArray a = CoefficientArray::window(k, w);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::vector<int> K = a.point(i);
    bool inside = true;
    for (int c : K) inside = inside && std::abs(c) <= support_w;
    if (inside) a[K] = rng.integer(-max_abs, max_abs);
  }
  return a;
}

namespace {

CoefficientArray component_box(int k, int w, unsigned mask) {
  std::vector<int> lo(k, -w), hi(k);
  for (int q = 0; q < k; ++q) hi[q] = (mask >> q) & 1U ? w : w - 1;
  return CoefficientArray(lo, hi);
}

}  // namespace

ReducedComplex ReducedComplex::build(int k, int w) {
  if (k < 1) throw Error(ErrorCode::InvalidInput, "the reduced complex needs k >= 1");
  ReducedComplex c;
  c.k = k;
  c.w = w;
  const unsigned full = 1U << k;
  std::vector<std::size_t> offset(full, 0);
  c.dims.assign(k + 1, 0);
  for (unsigned m = 0; m < full; ++m) {
    const int p = std::popcount(m);
    offset[m] = c.dims[p];
    c.dims[p] += component_box(k, w, m).size();
  }
  c.d.resize(k);
  for (int p = 0; p < k; ++p) {
    c.d[p].rows = c.dims[p + 1];
    c.d[p].cols = c.dims[p];
    c.d[p].by_row.resize(c.dims[p + 1]);
  }
  for (unsigned m = 0; m < full; ++m) {
    const int p = std::popcount(m);
    if (p == k) continue;
    const CoefficientArray src = component_box(k, w, m);
    for (int q = 0; q < k; ++q) {
      if ((m >> q) & 1U) continue;
      const unsigned t = m | (1U << q);
      const CoefficientArray dst = component_box(k, w, t);
      const std::int64_t sign = std::popcount(m & ((1U << q) - 1U)) % 2 == 0 ? 1 : -1;
      for (std::size_t i = 0; i < src.size(); ++i) {
        std::vector<int> K = src.point(i);
        const std::size_t col = offset[m] + i;
        c.d[p].by_row[offset[t] + dst.flat_index(K)].push_back({col, -sign});
        K[q] += 1;
        c.d[p].by_row[offset[t] + dst.flat_index(K)].push_back({col, sign});
      }
    }
  }
  return c;
}

std::size_t exact_rank(const ReducedComplex::Sparse& m) {
  using Rational = boost::multiprecision::cpp_rational;
  using Row = std::map<std::size_t, Rational>;
  std::map<std::size_t, Row> pivots;  // leading column -> normalized row
  std::size_t rank = 0;
  for (const auto& entries : m.by_row) {
    Row row;
    for (const auto& [col, v] : entries) {
      row[col] += v;
      if (row[col] == 0) row.erase(col);
    }
    while (!row.empty()) {
      const auto lead = row.begin()->first;
      const auto it = pivots.find(lead);
      if (it == pivots.end()) {
        const Rational inv = 1 / row.begin()->second;
        for (auto& [col, v] : row) v *= inv;
        pivots.emplace(lead, std::move(row));
        ++rank;
        break;
      }
      const Rational factor = row.begin()->second;
      for (const auto& [col, v] : it->second) {
        Rational& slot = row[col];
        slot -= factor * v;
        if (slot == 0) row.erase(col);
      }
    }
  }
  return rank;
}

bool d_squared_zero(const ReducedComplex& c) {
  for (std::size_t p = 0; p + 1 < c.d.size(); ++p) {
    const auto& first = c.d[p];
    const auto& second = c.d[p + 1];
    // (second * first)(r, j) = sum_i second(r, i) first(i, j)
    for (const auto& row : second.by_row) {
      std::map<std::size_t, std::int64_t> acc;
      for (const auto& [i, v] : row)
        for (const auto& [j, u] : first.by_row[i]) acc[j] += v * u;
      for (const auto& [j, v] : acc)
        if (v != 0) return false;
    }
  }
  return true;
}

std::vector<std::size_t> cohomology_ranks(int k, int w) {
  if (w < k + 2) throw Error(ErrorCode::WindowTooSmall, "window radius must be at least k + 2");
  const ReducedComplex c = ReducedComplex::build(k, w);
  std::vector<std::size_t> ranks(k);
  for (int p = 0; p < k; ++p) ranks[p] = exact_rank(c.d[p]);
  std::vector<std::size_t> betti(k + 1);
  for (int p = 0; p <= k; ++p) {
    const std::size_t out_rank = p < k ? ranks[p] : 0;
    const std::size_t in_rank = p > 0 ? ranks[p - 1] : 0;
    betti[p] = c.dims[p] - out_rank - in_rank;
  }
  return betti;
}

InjectivityCheck shift_injectivity(int k, int w, int q) {
  if (q < 0 || q >= k) throw Error(ErrorCode::InvalidInput, "shift direction out of range");
  std::vector<int> lo(k, -w), hi(k, w);
  hi[q] = w - 1;
  const CoefficientArray src(lo, hi);
  const CoefficientArray dst = CoefficientArray::window(k, w);
  ReducedComplex::Sparse m;
  m.rows = dst.size();
  m.cols = src.size();
  m.by_row.resize(m.rows);
  for (std::size_t i = 0; i < src.size(); ++i) {
    std::vector<int> K = src.point(i);
    m.by_row[dst.flat_index(K)].push_back({i, -1});
    K[q] += 1;
    m.by_row[dst.flat_index(K)].push_back({i, 1});
  }
  return {exact_rank(m), m.cols};
}

}  // namespace theta
