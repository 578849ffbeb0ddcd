#include "theta/koszul.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "theta/errors.hpp"
#include "theta/lattice.hpp"

namespace theta {

GroupRingElement GroupRingElement::one(int dim) { return monomial(Exponent(dim, 0)); }

GroupRingElement GroupRingElement::monomial(const Exponent& e, BigInt coef) {
  GroupRingElement out(static_cast<int>(e.size()));
  out.add_term(e, coef);
  return out;
}

GroupRingElement GroupRingElement::generator_power(int dim, int j, std::int64_t e) {
  Exponent x(dim, 0);
  x[j] = e;
  return monomial(x);
}

GroupRingElement GroupRingElement::geom(int dim, int j, std::int64_t e) {
  GroupRingElement out(dim);
  Exponent x(dim, 0);
  if (e > 0) {
    for (std::int64_t t = 0; t < e; ++t) {
      x[j] = t;
      out.add_term(x, 1);
    }
  } else {
    for (std::int64_t t = e; t < 0; ++t) {
      x[j] = t;
      out.add_term(x, -1);
    }
  }
  return out;
}

BigInt GroupRingElement::coefficient(const Exponent& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void GroupRingElement::add_term(const Exponent& e, const BigInt& coef) {
  if (dim_ == 0) dim_ = static_cast<int>(e.size());
  if (static_cast<int>(e.size()) != dim_) throw Error(ErrorCode::ShapeMismatch, "exponent has wrong length");
  if (coef == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  GroupRingElement out = *this;
  out += o;
  return out;
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const { return *this + (-o); }

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  GroupRingElement out(std::max(dim_, o.dim_));
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      if (ea.size() != eb.size()) throw Error(ErrorCode::ShapeMismatch, "group ring elements differ in rank");
      Exponent e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

BigInt GroupRingElement::augmentation() const {
  BigInt s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

std::string GroupRingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c << "*x^(";
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ")";
  }
  return os.str();
}

GroupRingElement gr_multiply(const GroupRingElement& a, const GroupRingElement& b) { return a * b; }

namespace {

// Sorts the tuple in place; returns the permutation sign or 0 on a repeat.
int sort_sign(std::vector<int>& t) {
  int sign = 1;
  for (std::size_t i = 1; i < t.size(); ++i) {
    for (std::size_t j = i; j > 0 && t[j - 1] > t[j]; --j) {
      std::swap(t[j - 1], t[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i] == t[i - 1]) return 0;
  return sign;
}

}  // namespace

KoszulChain KoszulChain::generator(int dim, const std::vector<int>& subset) {
  KoszulChain out(dim, static_cast<int>(subset.size()));
  out.add(subset, GroupRingElement::one(dim));
  return out;
}

GroupRingElement KoszulChain::component(const std::vector<int>& subset) const {
  const auto it = comps_.find(subset);
  return it == comps_.end() ? GroupRingElement::zero(dim_) : it->second;
}

void KoszulChain::add(const std::vector<int>& tuple, const GroupRingElement& coef) {
  if (static_cast<int>(tuple.size()) != degree_) throw Error(ErrorCode::ShapeMismatch, "wedge monomial has wrong degree");
  std::vector<int> t = tuple;
  for (int i : t)
    if (i < 0 || i >= dim_) throw Error(ErrorCode::InvalidInput, "wedge index out of range");
  const int sign = sort_sign(t);
  if (sign == 0 || coef.is_zero()) return;
  auto it = comps_.find(t);
  GroupRingElement add_value = sign > 0 ? coef : -coef;
  if (it == comps_.end()) {
    comps_.emplace(std::move(t), std::move(add_value));
  } else {
    it->second += add_value;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

KoszulChain KoszulChain::operator+(const KoszulChain& o) const {
  if (degree_ != o.degree_) throw Error(ErrorCode::ShapeMismatch, "chains of different degree");
  KoszulChain out = *this;
  for (const auto& [s, c] : o.comps_) out.add(s, c);
  return out;
}

KoszulChain KoszulChain::times(const GroupRingElement& a) const {
  KoszulChain out(dim_, degree_);
  for (const auto& [s, c] : comps_) out.add(s, a * c);
  return out;
}

namespace {

GroupRingElement basis_element_minus_one(const IntMatrix& basis, int dim, int j) {
  Exponent e(dim, 0);
  if (basis.size() == 0) {
    e[j] = 1;
  } else {
    for (int r = 0; r < dim; ++r) e[r] = basis(r, j);
  }
  return GroupRingElement::monomial(e) - GroupRingElement::one(dim);
}

}  // namespace

KoszulChain koszul_d(const KoszulChain& chain, const IntMatrix& basis) {
  const int dim = chain.dim();
  if (basis.size() != 0 && (basis.rows() != dim || basis.cols() != dim)) {
    throw Error(ErrorCode::ShapeMismatch, "Koszul basis must be 2n x 2n");
  }
  if (chain.degree() == 0) return KoszulChain(dim, 0);
  KoszulChain out(dim, chain.degree() - 1);
  for (const auto& [subset, coef] : chain.components()) {
    for (std::size_t i = 0; i < subset.size(); ++i) {
      std::vector<int> rest;
      for (std::size_t l = 0; l < subset.size(); ++l)
        if (l != i) rest.push_back(subset[l]);
      GroupRingElement term = coef * basis_element_minus_one(basis, dim, subset[i]);
      out.add(rest, i % 2 == 0 ? term : -term);
    }
  }
  return out;
}

std::vector<GroupRingElement> telescope_decompose(const Exponent& e, const std::vector<int>& order) {
  const int dim = static_cast<int>(e.size());
  std::vector<int> ord = order;
  if (ord.empty()) {
    ord.resize(dim);
    std::iota(ord.begin(), ord.end(), 0);
  }
  std::vector<int> check = ord;
  std::sort(check.begin(), check.end());
  for (int i = 0; i < dim; ++i)
    if (static_cast<int>(check.size()) != dim || check[i] != i)
      throw Error(ErrorCode::InvalidInput, "peel order must be a permutation");

  std::vector<GroupRingElement> r(dim, GroupRingElement::zero(dim));
  Exponent prefix(dim, 0);
  for (int j : ord) {
    r[j] = GroupRingElement::monomial(prefix) * GroupRingElement::geom(dim, j, e[j]);
    prefix[j] += e[j];
  }
  return r;
}

GroupRingElement telescope_reconstruct(const std::vector<GroupRingElement>& r) {
  const int dim = static_cast<int>(r.size());
  GroupRingElement out = GroupRingElement::one(dim);
  for (int j = 0; j < dim; ++j) out += r[j] * (GroupRingElement::generator_power(dim, j, 1) - GroupRingElement::one(dim));
  return out;
}

namespace {

void require_symplectic(const IntMatrix& S) {
  if (S.rows() != S.cols() || S.rows() % 2 != 0) throw Error(ErrorCode::ShapeMismatch, "S must be 2n x 2n");
  if (!is_symplectic(S)) throw Error(ErrorCode::NotSymplectic, "S is not symplectic");
}

std::vector<std::vector<GroupRingElement>> r_matrix(const IntMatrix& S, const std::vector<int>& order) {
  const int dim = static_cast<int>(S.rows());
  std::vector<std::vector<GroupRingElement>> r;
  for (int i = 0; i < dim; ++i) {
    Exponent e(dim);
    for (int j = 0; j < dim; ++j) e[j] = S(j, i);
    r.push_back(telescope_decompose(e, order));
  }
  return r;
}

void expand(const std::vector<std::vector<GroupRingElement>>& r, const std::vector<int>& subset, std::size_t pos,
            std::vector<int>& tuple, const GroupRingElement& acc, KoszulChain& out) {
  if (pos == subset.size()) {
    out.add(tuple, acc);
    return;
  }
  const int dim = static_cast<int>(r.size());
  for (int t = 0; t < dim; ++t) {
    if (std::find(tuple.begin(), tuple.end(), t) != tuple.end()) continue;
    const GroupRingElement& entry = r[subset[pos]][t];
    if (entry.is_zero()) continue;
    tuple.push_back(t);
    expand(r, subset, pos + 1, tuple, acc * entry, out);
    tuple.pop_back();
  }
}

KoszulChain s_star_with(const std::vector<std::vector<GroupRingElement>>& r, const KoszulChain& chain) {
  KoszulChain out(chain.dim(), chain.degree());
  for (const auto& [subset, coef] : chain.components()) {
    std::vector<int> tuple;
    expand(r, subset, 0, tuple, coef, out);
  }
  return out;
}

}  // namespace

KoszulChain s_star(const IntMatrix& S, const KoszulChain& chain, const std::vector<int>& order) {
  require_symplectic(S);
  if (S.rows() != chain.dim()) throw Error(ErrorCode::ShapeMismatch, "chain and S differ in rank");
  return s_star_with(r_matrix(S, order), chain);
}

bool verify_chain_map(const IntMatrix& S, int maxdeg, const std::vector<int>& order) {
  require_symplectic(S);
  const int dim = static_cast<int>(S.rows());
  const auto r = r_matrix(S, order);
  for (int deg = 1; deg <= std::min(maxdeg, dim); ++deg) {
    std::vector<bool> mask(dim, false);
    std::fill(mask.begin(), mask.begin() + deg, true);
    do {
      std::vector<int> subset;
      for (int i = 0; i < dim; ++i)
        if (mask[i]) subset.push_back(i);
      const KoszulChain gen = KoszulChain::generator(dim, subset);
      const KoszulChain lhs = s_star_with(r, koszul_d(gen, S));
      const KoszulChain rhs = koszul_d(s_star_with(r, gen));
      if (!(lhs == rhs)) return false;
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return true;
}

IntMatrix type_i_matrix(const IntMatrix& a) {
  const auto n = a.rows();
  IntMatrix s = IntMatrix::Zero(2 * n, 2 * n);
  s.topLeftCorner(n, n) = a;
  s.bottomRightCorner(n, n) = unimodular_inverse(a).transpose();
  return s;
}

IntMatrix elementary_upper(int n, int j) {
  if (j < 2 || j > n) throw Error(ErrorCode::InvalidInput, "E_j needs 2 <= j <= n");
  IntMatrix e = IntMatrix::Identity(n, n);
  e(j - 2, j - 1) = 1;
  return e;
}

IntMatrix type_ia_matrix(int n, int k, SplitMix64& rng) {
  IntMatrix a = IntMatrix::Identity(n, n);
  for (int r = k; r < n; ++r) {
    for (int c = 0; c < k; ++c) a(r, c) = rng.integer(-2, 2);
  }
  if (n - k >= 2) {
    const int r = k + static_cast<int>(rng.integer(0, n - k - 1));
    int c = k + static_cast<int>(rng.integer(0, n - k - 2));
    if (c >= r) ++c;
    a(r, c) = rng.integer(-1, 1);
  } else if (n - k == 1 && rng.integer(0, 1) == 1) {
    a(n - 1, n - 1) = -1;
  }
  return type_i_matrix(a);
}

IntMatrix type_ib_matrix(int n, int k) { return type_i_matrix(elementary_upper(n, k)); }

IntMatrix type_ic_matrix(int n, int k) { return type_i_matrix(elementary_upper(n, k + 1)); }

IntMatrix type_ii_matrix(const IntMatrix& b) {
  const auto n = b.rows();
  if (b != b.transpose()) throw Error(ErrorCode::InvalidInput, "type II block must be symmetric");
  IntMatrix s = IntMatrix::Identity(2 * n, 2 * n);
  s.bottomLeftCorner(n, n) = b;
  return s;
}

IntMatrix type_iii_matrix(int n) {
  IntMatrix s = IntMatrix::Zero(2 * n, 2 * n);
  s.topRightCorner(n, n) = IntMatrix::Identity(n, n);
  s.bottomLeftCorner(n, n) = -IntMatrix::Identity(n, n);
  return s;
}

IntMatrix random_type_word(int n, int k, int length, SplitMix64& rng) {
  IntMatrix s = IntMatrix::Identity(2 * n, 2 * n);
  for (int step = 0; step < length; ++step) {
    IntMatrix factor;
    switch (rng.integer(0, 4)) {
      case 0:
        factor = type_ia_matrix(n, k, rng);
        break;
      case 1:
        factor = type_i_matrix(elementary_upper(n, static_cast<int>(rng.integer(2, n))));
        break;
      case 2:
        factor = type_i_matrix(elementary_upper(n, static_cast<int>(rng.integer(2, n))).transpose());
        break;
      case 3: {
        IntMatrix b(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) b(i, j) = b(j, i) = rng.integer(-2, 2);
        factor = type_ii_matrix(b);
        break;
      }
      default:
        factor = type_iii_matrix(n);
        break;
    }
    s = s * factor;
  }
  return s;
}

KoszulChain random_chain(int dim, int degree, int terms, int max_coef, int max_exp, SplitMix64& rng) {
  KoszulChain out(dim, degree);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> tuple;
    while (static_cast<int>(tuple.size()) < degree) {
      const int idx = static_cast<int>(rng.integer(0, dim - 1));
      if (std::find(tuple.begin(), tuple.end(), idx) == tuple.end()) tuple.push_back(idx);
    }
    Exponent e(dim);
    for (auto& x : e) x = rng.integer(-max_exp, max_exp);
    out.add(tuple, GroupRingElement::monomial(e, BigInt(rng.integer(-max_coef, max_coef))));
  }
  return out;
}

}  // namespace theta
