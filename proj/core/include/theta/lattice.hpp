#pragma once

#include <cstdint>
#include <vector>

#include "theta/numeric.hpp"
#include "theta/random.hpp"

namespace theta {

/// Basis {N_1..N_n, M_1..M_n} of Lambda = Z^n + Z^n with tN * M = I.
/// Columns of N live in Lambda_1 (the Omega-periods), columns of M in
/// Lambda_2 (the integer periods). Gamma_+ is spanned by N_{k+1}..N_n.
struct SplitBasis {
  IntMatrix N;
  IntMatrix M;
  int k = 0;

  int n() const noexcept { return static_cast<int>(N.rows()); }
  /// The 2n x 2n block-diagonal matrix (NM) whose columns are (N_j, M_i).
  IntMatrix as_lattice_basis() const;
  /// Columns k+1..n of N.
  IntMatrix positive_part() const { return N.rightCols(N.cols() - k); }

  static SplitBasis reference(int n, int k);
};

/// g = (A B; C D) with integer n x n blocks.
struct ModularElement {
  IntMatrix A, B, C, D;

  int n() const noexcept { return static_cast<int>(A.rows()); }
  IntMatrix full() const;
  static ModularElement from_full(const IntMatrix& g);

  static ModularElement identity(int n);
  /// (0 -I; I 0).
  static ModularElement inversion(int n);
  /// (I B; 0 I), B symmetric.
  static ModularElement translation(const IntMatrix& b);
  /// (tA 0; 0 A^{-1}) for unimodular A.
  static ModularElement rotation(const IntMatrix& a);

  ModularElement operator*(const ModularElement& h) const;
  /// Symplectic inverse (tD -tB; -tC tA); exact only when *this is symplectic.
  ModularElement inverse() const;

  friend bool operator==(const ModularElement& x, const ModularElement& y) {
    return x.A == y.A && x.B == y.B && x.C == y.C && x.D == y.D;
  }
};

/// Throws ShapeMismatch when the blocks are not all n x n.
bool is_symplectic(const ModularElement& g);
/// 2n x 2n integer matrix S with tS J S = J.
bool is_symplectic(const IntMatrix& s);
/// Requires a symplectic g (throws NotSymplectic); checks the even-diagonal
/// conditions on tA C and tB D.
bool is_gamma12(const ModularElement& g);

/// Exact determinant (fraction-free elimination in 128-bit arithmetic).
std::int64_t exact_determinant(const IntMatrix& m);
/// Inverse of a unimodular matrix; throws SingularMatrix otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);
/// -J tS J, the inverse of a symplectic 2n x 2n matrix.
IntMatrix symplectic_inverse(const IntMatrix& s);
/// Columns form a basis of a primitive sublattice: the gcd of the maximal
/// minors (the last determinantal divisor, i.e. the product of the Smith
/// invariants) equals 1.
bool is_primitive(const IntMatrix& generators);

/// Throws SignatureMismatch if signature(q) != (k, n-k) and InvalidInput if
/// tN M != I. Otherwise checks positivity of q on N_{k+1..n} and of q^{-1}
/// on M_{k+1..n}.
bool is_split_basis(const SplitBasis& basis, const RealMatrix& q, int k);

/// Searches unimodular N with entries bounded by `bound`, built from short
/// vectors in a fixed order, and returns the first Q-split basis found
/// (M = tN^{-1}). Throws NotFound when the search space is exhausted.
SplitBasis find_split_basis(const RealMatrix& q, int k, int bound = 3);

/// Points shift + generators * c, c in Z^r, with tK q K <= radius^2.
struct ConeSpec {
  IntMatrix generators;  // n x r, r may be 0
  RealVector shift;      // size n; empty means zero
  double radius = 0.0;

  int n() const noexcept { return static_cast<int>(generators.rows()); }
  int rank() const noexcept { return static_cast<int>(generators.cols()); }
  RealVector shift_or_zero() const;
};

/// Gamma_+ of the basis, optionally shifted.
ConeSpec positive_cone(const SplitBasis& basis, RealVector shift = {});

struct ConePoint {
  RealVector K;
  IntVector coeffs;
  double norm = 0.0;  // tK q K
};

/// Canonical order: ascending norm, ties broken lexicographically on K.
/// Throws NonPositiveRestriction if q is not positive definite on the span
/// and InvalidInput if the generators are not a primitive independent set.
std::vector<ConePoint> enumerate_cone(const ConeSpec& cone, const RealMatrix& q);

/// Basis after the type-Ic move N_{k+1} -> N_{k+1} - N_k (paper index k,
/// 1 <= k < n); M is recomputed as tN^{-1}.
SplitBasis type_ic_transform(const SplitBasis& basis, int k);

struct SignedPoint {
  IntVector K;
  int sign = 0;
  double norm = 0.0;
};

/// Signed lattice points between Gamma_+ and the type-Ic transformed cone:
/// writing K = a N_k + b N_{k+1} + sum_{j>k+1} m_j N_j, the sign is +1 when
/// a < 0 <= a + b and -1 when a + b < 0 <= a. Truncated to the coefficient
/// box max(|a|, |b|, |m_j|) <= box; canonical order as enumerate_cone.
/// Throws NotSplitAfterTransform if either basis fails to be q-split.
std::vector<SignedPoint> enumerate_wedge(const SplitBasis& basis, int k, const RealMatrix& q, int box);

struct BasisTransform {
  IntMatrix basis;  // columns (N^g_1..N^g_n, M^g_1..M^g_n) in the reference basis
  IntMatrix S;      // change of basis B^{-1} tg B, symplectic
};

/// (N^g, M^g) = (D -C; -B A) (N, M). Throws NotGamma12.
BasisTransform transform_basis(const ModularElement& g, const IntMatrix& lattice_basis);
BasisTransform transform_basis(const ModularElement& g, const SplitBasis& basis);

/// A random word of length `length` in the generators of Gamma_{1,2}:
/// inversion, translations by symmetric B with even diagonal (entries in
/// [-2, 2]) and rotations by elementary unimodular matrices.
ModularElement random_gamma12_word(int n, int length, SplitMix64& rng);

}  // namespace theta
