#pragma once

#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "theta/numeric.hpp"
#include "theta/random.hpp"

namespace theta {

using BigInt = boost::multiprecision::cpp_int;
using Exponent = std::vector<std::int64_t>;

/// Finite Z-combination of elements of Lambda = Z^{2n}, written
/// multiplicatively: the exponent vector holds the coordinates of the group
/// element. Zero coefficients are never stored.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(int dim) : dim_(dim) {}

  static GroupRingElement zero(int dim) { return GroupRingElement(dim); }
  static GroupRingElement one(int dim);
  static GroupRingElement monomial(const Exponent& e, BigInt coef = 1);
  /// x_j^e as a monomial in the coordinate basis.
  static GroupRingElement generator_power(int dim, int j, std::int64_t e);
  /// x^{e-1} + ... + 1 for e > 0, 0 for e = 0, -(x^e + ... + x^{-1}) for e < 0.
  static GroupRingElement geom(int dim, int j, std::int64_t e);

  int dim() const noexcept { return dim_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<Exponent, BigInt>& terms() const noexcept { return terms_; }
  BigInt coefficient(const Exponent& e) const;
  void add_term(const Exponent& e, const BigInt& coef);

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator-() const;
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement& operator+=(const GroupRingElement& o);
  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) { return a.terms_ == b.terms_; }

  /// Sum of coefficients (every group element sent to 1).
  BigInt augmentation() const;
  std::string to_string() const;

 private:
  int dim_ = 0;
  std::map<Exponent, BigInt> terms_;
};

GroupRingElement gr_multiply(const GroupRingElement& a, const GroupRingElement& b);

/// Element of Z[Lambda] (x) wedge^p W. Subsets are strictly increasing,
/// 0-based indices into the basis w_1..w_{2n} = u_1..u_n, v_1..v_n.
class KoszulChain {
 public:
  KoszulChain() = default;
  KoszulChain(int dim, int degree) : dim_(dim), degree_(degree) {}

  /// 1 (x) w_subset (subset need not be sorted; the sort sign is applied).
  static KoszulChain generator(int dim, const std::vector<int>& subset);

  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  const std::map<std::vector<int>, GroupRingElement>& components() const noexcept { return comps_; }
  GroupRingElement component(const std::vector<int>& subset) const;

  /// Adds coef (x) w_{t_1} ... w_{t_p} for an arbitrary tuple; repeated
  /// indices vanish, otherwise the tuple is sorted with its permutation sign.
  void add(const std::vector<int>& tuple, const GroupRingElement& coef);
  KoszulChain operator+(const KoszulChain& o) const;
  /// Left multiplication of every component by a.
  KoszulChain times(const GroupRingElement& a) const;
  bool is_zero() const noexcept { return comps_.empty(); }
  friend bool operator==(const KoszulChain& a, const KoszulChain& b) {
    return a.degree_ == b.degree_ && a.comps_ == b.comps_;
  }

 private:
  int dim_ = 0;
  int degree_ = 0;
  std::map<std::vector<int>, GroupRingElement> comps_;
};

/// d(a (x) w_{p_1} ... w_{p_k}) = sum_i (-1)^{i+1} a (x_{p_i} - 1) (x) w_{p_1} .. ^ .. w_{p_k}
/// where x_j is the group element whose coordinates are column j of `basis`
/// (the identity when empty). Degree 0 maps to the zero chain of degree 0.
KoszulChain koszul_d(const KoszulChain& chain, const IntMatrix& basis = {});

/// R_j with x - 1 = sum_j R_j (x'_j - 1) for x = prod x'_j^{e_j}, peeling the
/// factors in `order` (0-based; empty means ascending):
/// R_j = (product of the already peeled x'_l^{e_l}) * geom(x'_j, e_j).
std::vector<GroupRingElement> telescope_decompose(const Exponent& e, const std::vector<int>& order = {});

/// Reassembles 1 + sum_j R_j (x'_j - 1).
GroupRingElement telescope_reconstruct(const std::vector<GroupRingElement>& r);

/// The chain map of the basis change x_i = prod_j x'_j^{S_ji}:
///   a (x) w_{p_1..p_k} -> a * sum over tuples prod_i R_{p_i t_i} (x) w_{t_1..t_k},
/// i.e. the k-th exterior power of R, normalized to increasing subsets with
/// the sorting sign. Throws NotSymplectic.
KoszulChain s_star(const IntMatrix& S, const KoszulChain& chain, const std::vector<int>& order = {});

/// s_* o d = d' o s_* on every generator 1 (x) w_P with 1 <= |P| <= maxdeg,
/// where d uses the columns of S and d' the coordinate basis.
bool verify_chain_map(const IntMatrix& S, int maxdeg, const std::vector<int>& order = {});

/// Basis-change matrices of the elementary types (k is 1-based as in the
/// usual numbering of Gamma_- = <N_1..N_k>).
IntMatrix type_i_matrix(const IntMatrix& a);       // (A 0; 0 tA^{-1})
IntMatrix elementary_upper(int n, int j);         // E_j: identity plus 1 at (j-1, j), 1-based, j >= 2
IntMatrix type_ia_matrix(int n, int k, SplitMix64& rng);
IntMatrix type_ib_matrix(int n, int k);           // A = E_k
IntMatrix type_ic_matrix(int n, int k);           // A = E_{k+1}
IntMatrix type_ii_matrix(const IntMatrix& b);     // (I 0; B I)
IntMatrix type_iii_matrix(int n);                 // (0 I; -I 0)

/// Product of `length` random elementary-type matrices for (n, k).
IntMatrix random_type_word(int n, int k, int length, SplitMix64& rng);

/// Random chain of the given degree with small coefficients.
KoszulChain random_chain(int dim, int degree, int terms, int max_coef, int max_exp, SplitMix64& rng);

}  // namespace theta
