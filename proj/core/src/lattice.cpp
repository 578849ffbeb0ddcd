#include "theta/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "theta/errors.hpp"

namespace theta {

namespace {

IntMatrix int_identity(int n) { return IntMatrix::Identity(n, n); }

IntMatrix symplectic_form(int n) {
  IntMatrix j = IntMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = int_identity(n);
  j.bottomLeftCorner(n, n) = -int_identity(n);
  return j;
}

RealMatrix to_real(const IntMatrix& m) { return m.cast<double>(); }

bool lex_less(const RealVector& a, const RealVector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

double quad_form(const RealMatrix& q, const RealVector& v) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < v.size(); ++j) row += q(i, j) * v(j);
    s += v(i) * row;
  }
  return s;
}

void require_square(const IntMatrix& m, Eigen::Index n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + " must be " + std::to_string(n) + "x" +
                                              std::to_string(n));
  }
}

}  // namespace

IntMatrix SplitBasis::as_lattice_basis() const {
  const int dim = n();
  IntMatrix b = IntMatrix::Zero(2 * dim, 2 * dim);
  b.topLeftCorner(dim, dim) = N;
  b.bottomRightCorner(dim, dim) = M;
  return b;
}

SplitBasis SplitBasis::reference(int n, int k) { return {int_identity(n), int_identity(n), k}; }

IntMatrix ModularElement::full() const {
  const int dim = n();
  IntMatrix g(2 * dim, 2 * dim);
  g << A, B, C, D;
  return g;
}

ModularElement ModularElement::from_full(const IntMatrix& g) {
  if (g.rows() != g.cols() || g.rows() % 2 != 0) {
    throw Error(ErrorCode::ShapeMismatch, "modular element must be 2n x 2n");
  }
  const auto dim = g.rows() / 2;
  return {g.topLeftCorner(dim, dim), g.topRightCorner(dim, dim), g.bottomLeftCorner(dim, dim),
          g.bottomRightCorner(dim, dim)};
}

ModularElement ModularElement::identity(int n) {
  return {int_identity(n), IntMatrix::Zero(n, n), IntMatrix::Zero(n, n), int_identity(n)};
}

ModularElement ModularElement::inversion(int n) {
  return {IntMatrix::Zero(n, n), -int_identity(n), int_identity(n), IntMatrix::Zero(n, n)};
}

ModularElement ModularElement::translation(const IntMatrix& b) {
  const auto dim = static_cast<int>(b.rows());
  return {int_identity(dim), b, IntMatrix::Zero(dim, dim), int_identity(dim)};
}

ModularElement ModularElement::rotation(const IntMatrix& a) {
  const auto dim = static_cast<int>(a.rows());
  return {a.transpose(), IntMatrix::Zero(dim, dim), IntMatrix::Zero(dim, dim), unimodular_inverse(a)};
}

ModularElement ModularElement::operator*(const ModularElement& h) const {
  return {A * h.A + B * h.C, A * h.B + B * h.D, C * h.A + D * h.C, C * h.B + D * h.D};
}

ModularElement ModularElement::inverse() const {
  return {D.transpose(), -B.transpose(), -C.transpose(), A.transpose()};
}

bool is_symplectic(const ModularElement& g) {
  const auto dim = g.A.rows();
  for (const IntMatrix* blk : {&g.A, &g.B, &g.C, &g.D}) {
    if (blk->rows() != dim || blk->cols() != dim) {
      throw Error(ErrorCode::ShapeMismatch, "modular element blocks differ in size");
    }
  }
  const IntMatrix ac = g.A.transpose() * g.C;
  const IntMatrix bd = g.B.transpose() * g.D;
  const IntMatrix unit = g.A.transpose() * g.D - g.C.transpose() * g.B;
  return ac == ac.transpose() && bd == bd.transpose() && unit == int_identity(static_cast<int>(dim));
}

bool is_symplectic(const IntMatrix& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) return false;
  const IntMatrix j = symplectic_form(static_cast<int>(s.rows() / 2));
  return IntMatrix(s.transpose() * j * s) == j;
}

bool is_gamma12(const ModularElement& g) {
  if (!is_symplectic(g)) throw Error(ErrorCode::NotSymplectic, "element is not in Sp(2n, Z)");
  const IntMatrix ac = g.A.transpose() * g.C;
  const IntMatrix bd = g.B.transpose() * g.D;
  for (Eigen::Index i = 0; i < ac.rows(); ++i) {
    if (ac(i, i) % 2 != 0 || bd(i, i) % 2 != 0) return false;
  }
  return true;
}

std::int64_t exact_determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "determinant of non-square matrix");
  const auto dim = m.rows();
  if (dim == 0) return 1;
  std::vector<std::vector<__int128>> a(dim, std::vector<__int128>(dim));
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a[i][j] = m(i, j);
  int sign = 1;
  __int128 prev = 1;
  for (Eigen::Index p = 0; p < dim; ++p) {
    if (a[p][p] == 0) {
      Eigen::Index swap = p + 1;
      while (swap < dim && a[swap][p] == 0) ++swap;
      if (swap == dim) return 0;
      std::swap(a[p], a[swap]);
      sign = -sign;
    }
    for (Eigen::Index i = p + 1; i < dim; ++i) {
      for (Eigen::Index j = p + 1; j < dim; ++j) {
        a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
      }
    }
    prev = a[p][p];
  }
  return static_cast<std::int64_t>(sign * a[dim - 1][dim - 1]);
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "inverse of non-square matrix");
  const auto det = exact_determinant(m);
  if (det != 1 && det != -1) {
    throw Error(ErrorCode::SingularMatrix, "matrix is not unimodular (det " + std::to_string(det) + ")");
  }
  const RealMatrix inv = to_real(m).inverse();
  IntMatrix r = inv.array().round().cast<std::int64_t>().matrix();
  if (IntMatrix(m * r) != int_identity(static_cast<int>(m.rows()))) {
    throw Error(ErrorCode::SingularMatrix, "unimodular inverse failed exact check");
  }
  return r;
}

IntMatrix symplectic_inverse(const IntMatrix& s) {
  const IntMatrix j = symplectic_form(static_cast<int>(s.rows() / 2));
  return -j * s.transpose() * j;
}

bool is_primitive(const IntMatrix& generators) {
  const auto n = generators.rows();
  const auto r = generators.cols();
  if (r == 0) return true;
  if (r > n) return false;
  std::vector<int> rows(r);
  std::iota(rows.begin(), rows.end(), 0);
  std::int64_t g = 0;
  while (true) {
    IntMatrix minor(r, r);
    for (Eigen::Index i = 0; i < r; ++i) minor.row(i) = generators.row(rows[i]);
    g = std::gcd(g, exact_determinant(minor));
    if (g == 1) return true;
    // next r-combination of {0..n-1}
    Eigen::Index i = r - 1;
    while (i >= 0 && rows[i] == n - r + i) --i;
    if (i < 0) break;
    ++rows[i];
    for (Eigen::Index j = i + 1; j < r; ++j) rows[j] = rows[j - 1] + 1;
  }
  return false;
}

bool is_split_basis(const SplitBasis& basis, const RealMatrix& q, int k) {
  const int n = basis.n();
  require_square(basis.N, n, "N");
  require_square(basis.M, n, "M");
  if (q.rows() != n || q.cols() != n) throw Error(ErrorCode::ShapeMismatch, "Q must match the basis");
  const Signature sig = signature(q);
  if (sig != Signature{k, n - k}) {
    throw Error(ErrorCode::SignatureMismatch, "signature of Q is (" + std::to_string(sig.neg) + "," +
                                                  std::to_string(sig.pos) + "), expected k = " +
                                                  std::to_string(k));
  }
  if (IntMatrix(basis.N.transpose() * basis.M) != int_identity(n)) {
    throw Error(ErrorCode::InvalidInput, "basis does not satisfy tN M = I");
  }
  const RealMatrix qs = symmetrize_upper(q);
  const RealMatrix np = to_real(basis.N.rightCols(n - k));
  const RealMatrix mp = to_real(basis.M.rightCols(n - k));
  const RealMatrix qinv = qs.inverse();
  return is_positive_definite(np.transpose() * qs * np) && is_positive_definite(mp.transpose() * qinv * mp);
}

namespace {

struct SplitSearch {
  const RealMatrix& q;
  RealMatrix qinv;
  int n;
  int k;
  std::vector<IntVector> candidates;
  std::vector<std::size_t> positive;  // indices into candidates with q(v) > 0
  std::vector<IntVector> chosen_pos;
  std::vector<IntVector> chosen_neg;

  IntMatrix assemble() const {
    IntMatrix m(n, n);
    for (int j = 0; j < k; ++j) m.col(j) = chosen_neg[j];
    for (int j = 0; j < n - k; ++j) m.col(k + j) = chosen_pos[j];
    return m;
  }

  IntMatrix columns(const std::vector<IntVector>& a, const std::vector<IntVector>& b) const {
    IntMatrix m(n, static_cast<Eigen::Index>(a.size() + b.size()));
    Eigen::Index c = 0;
    for (const auto& v : a) m.col(c++) = v;
    for (const auto& v : b) m.col(c++) = v;
    return m;
  }

  bool positive_ok() const {
    const RealMatrix p = columns(chosen_pos, {}).cast<double>();
    return is_positive_definite(p.transpose() * q * p);
  }

  bool search_negative(std::size_t from, SplitBasis& out) {
    if (static_cast<int>(chosen_neg.size()) == k) {
      const IntMatrix nmat = assemble();
      const auto det = exact_determinant(nmat);
      if (det != 1 && det != -1) return false;
      const IntMatrix m = unimodular_inverse(nmat).transpose();
      const RealMatrix mp = m.rightCols(n - k).cast<double>();
      if (!is_positive_definite(mp.transpose() * qinv * mp)) return false;
      out = SplitBasis{nmat, m, k};
      return true;
    }
    for (std::size_t i = from; i < candidates.size(); ++i) {
      chosen_neg.push_back(candidates[i]);
      if (is_primitive(columns(chosen_pos, chosen_neg)) && search_negative(i + 1, out)) return true;
      chosen_neg.pop_back();
    }
    return false;
  }

  bool search_positive(std::size_t from, SplitBasis& out) {
    if (static_cast<int>(chosen_pos.size()) == n - k) {
      chosen_neg.clear();
      return search_negative(0, out);
    }
    for (std::size_t p = from; p < positive.size(); ++p) {
      chosen_pos.push_back(candidates[positive[p]]);
      if (positive_ok() && is_primitive(columns(chosen_pos, {})) && search_positive(p + 1, out)) return true;
      chosen_pos.pop_back();
    }
    return false;
  }
};

}  // namespace

SplitBasis find_split_basis(const RealMatrix& q_in, int k, int bound) {
  const RealMatrix q = symmetrize_upper(q_in);
  const int n = static_cast<int>(q.rows());
  const Signature sig = signature(q);
  if (sig != Signature{k, n - k}) throw Error(ErrorCode::SignatureMismatch, "signature of Q does not match k");

  SplitSearch s{q, q.inverse(), n, k, {}, {}, {}, {}};
  if (bound >= 1) {
    IntVector v = IntVector::Constant(n, -bound);
    while (true) {
      if (!v.isZero()) s.candidates.push_back(v);
      int i = n - 1;
      while (i >= 0 && v(i) == bound) v(i--) = -bound;
      if (i < 0) break;
      ++v(i);
    }
  }
  // Short vectors first (max-norm, then L1), positive coordinates before negative ones.
  std::stable_sort(s.candidates.begin(), s.candidates.end(), [](const IntVector& a, const IntVector& b) {
    const auto key = [](const IntVector& v) {
      return std::make_pair(v.cwiseAbs().maxCoeff(), v.cwiseAbs().sum());
    };
    if (key(a) != key(b)) return key(a) < key(b);
    return lex_less(b, a);
  });
  for (std::size_t i = 0; i < s.candidates.size(); ++i) {
    if (quad_form(q, s.candidates[i].cast<double>()) > 0.0) s.positive.push_back(i);
  }

  SplitBasis out;
  if (!s.search_positive(0, out)) {
    throw Error(ErrorCode::NotFound, "no Q-split basis with entries bounded by " + std::to_string(bound));
  }
  return out;
}

RealVector ConeSpec::shift_or_zero() const {
  if (shift.size() == 0) return RealVector::Zero(n());
  if (shift.size() != n()) throw Error(ErrorCode::ShapeMismatch, "cone shift has wrong length");
  return shift;
}

ConeSpec positive_cone(const SplitBasis& basis, RealVector shift) {
  return ConeSpec{basis.positive_part(), std::move(shift), 0.0};
}

std::vector<ConePoint> enumerate_cone(const ConeSpec& cone, const RealMatrix& q_in) {
  const int n = cone.n();
  const int r = cone.rank();
  if (q_in.rows() != n || q_in.cols() != n) throw Error(ErrorCode::ShapeMismatch, "Q must be n x n");
  if (!is_primitive(cone.generators)) {
    throw Error(ErrorCode::InvalidInput, "cone generators are not a primitive independent set");
  }
  const RealMatrix q = symmetrize_upper(q_in);
  const RealVector shift = cone.shift_or_zero();
  const RealMatrix g = to_real(cone.generators);
  const double r2 = cone.radius * cone.radius;
  std::vector<ConePoint> out;

  if (r == 0) {
    const double norm = quad_form(q, shift);
    if (norm <= r2) out.push_back({shift, IntVector(0), norm});
    return out;
  }

  const RealMatrix a = g.transpose() * q * g;
  if (!is_positive_definite(a)) {
    throw Error(ErrorCode::NonPositiveRestriction, "Q is not positive definite on the cone span");
  }
  const RealMatrix a_inv = a.inverse();
  const RealVector b = g.transpose() * q * shift;
  const RealVector center = -a_inv * b;
  const double q0 = quad_form(q, shift) - b.dot(a_inv * b);
  const double rho2 = r2 - q0;
  if (rho2 < -1e-12 * std::max(1.0, r2)) return out;

  IntVector lo(r), hi(r);
  for (int i = 0; i < r; ++i) {
    const double half = std::sqrt(std::max(0.0, rho2) * a_inv(i, i)) + 1e-9;
    lo(i) = static_cast<std::int64_t>(std::floor(center(i) - half));
    hi(i) = static_cast<std::int64_t>(std::ceil(center(i) + half));
  }
  IntVector c = lo;
  while (true) {
    const RealVector k = shift + g * c.cast<double>();
    const double norm = quad_form(q, k);
    if (norm <= r2) out.push_back({k, c, norm});
    int i = r - 1;
    while (i >= 0 && c(i) == hi(i)) {
      c(i) = lo(i);
      --i;
    }
    if (i < 0) break;
    ++c(i);
  }
  std::sort(out.begin(), out.end(), [](const ConePoint& x, const ConePoint& y) {
    if (x.norm != y.norm) return x.norm < y.norm;
    return lex_less(x.K, y.K);
  });
  return out;
}

SplitBasis type_ic_transform(const SplitBasis& basis, int k) {
  const int n = basis.n();
  if (k < 1 || k >= n) throw Error(ErrorCode::InvalidInput, "type Ic index must satisfy 1 <= k < n");
  SplitBasis t = basis;
  t.N.col(k) = basis.N.col(k) - basis.N.col(k - 1);
  t.M = unimodular_inverse(t.N).transpose();
  return t;
}

std::vector<SignedPoint> enumerate_wedge(const SplitBasis& basis, int k, const RealMatrix& q_in, int box) {
  const int n = basis.n();
  const RealMatrix q = symmetrize_upper(q_in);
  SplitBasis base = basis;
  base.k = k;
  const SplitBasis moved = type_ic_transform(base, k);
  if (!is_split_basis(base, q, k)) {
    throw Error(ErrorCode::NotSplitAfterTransform, "basis is not Q-split");
  }
  if (!is_split_basis(moved, q, k)) {
    throw Error(ErrorCode::NotSplitAfterTransform, "type Ic transformed basis is not Q-split");
  }

  // Coefficients on N_k, N_{k+1}, ..., N_n (0-based columns k-1 .. n-1).
  const int dims = n - k + 1;
  std::vector<SignedPoint> out;
  if (box < 0) return out;
  IntVector c = IntVector::Constant(dims, -box);
  while (true) {
    const std::int64_t a = c(0);
    const std::int64_t b = c(1);
    int sign = 0;
    if (a < 0 && a + b >= 0) sign = +1;
    if (a >= 0 && a + b < 0) sign = -1;
    if (sign != 0) {
      IntVector kv = IntVector::Zero(n);
      for (int j = 0; j < dims; ++j) kv += c(j) * basis.N.col(k - 1 + j);
      out.push_back({kv, sign, quad_form(q, kv.cast<double>())});
    }
    int i = dims - 1;
    while (i >= 0 && c(i) == box) c(i--) = -box;
    if (i < 0) break;
    ++c(i);
  }
  std::sort(out.begin(), out.end(), [](const SignedPoint& x, const SignedPoint& y) {
    if (x.norm != y.norm) return x.norm < y.norm;
    return lex_less(x.K, y.K);
  });
  return out;
}

BasisTransform transform_basis(const ModularElement& g, const IntMatrix& lattice_basis) {
  if (!is_gamma12(g)) throw Error(ErrorCode::NotGamma12, "element is not in Gamma_{1,2}");
  const int n = g.n();
  if (lattice_basis.rows() != 2 * n || lattice_basis.cols() != 2 * n) {
    throw Error(ErrorCode::ShapeMismatch, "lattice basis must be 2n x 2n");
  }
  if (!is_symplectic(lattice_basis)) {
    throw Error(ErrorCode::InvalidInput, "lattice basis must be symplectic");
  }
  IntMatrix t(2 * n, 2 * n);
  t << g.D, -g.C, -g.B, g.A;
  BasisTransform out;
  out.basis = t * lattice_basis;
  out.S = symplectic_inverse(lattice_basis) * g.full().transpose() * lattice_basis;
  return out;
}

BasisTransform transform_basis(const ModularElement& g, const SplitBasis& basis) {
  return transform_basis(g, basis.as_lattice_basis());
}

ModularElement random_gamma12_word(int n, int length, SplitMix64& rng) {
  ModularElement w = ModularElement::identity(n);
  for (int step = 0; step < length; ++step) {
    ModularElement gen = ModularElement::identity(n);
    switch (rng.integer(0, 2)) {
      case 0:
        gen = ModularElement::inversion(n);
        break;
      case 1: {
        IntMatrix b = IntMatrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
          b(i, i) = 2 * rng.integer(-1, 1);
          for (int j = i + 1; j < n; ++j) b(i, j) = b(j, i) = rng.integer(-2, 2);
        }
        gen = ModularElement::translation(b);
        break;
      }
      default: {
        IntMatrix a = IntMatrix::Identity(n, n);
        if (n > 1) {
          const auto i = rng.integer(0, n - 1);
          auto j = rng.integer(0, n - 2);
          if (j >= i) ++j;
          a(i, j) = rng.integer(0, 1) == 0 ? 1 : -1;
        } else {
          a(0, 0) = -1;
        }
        gen = ModularElement::rotation(a);
        break;
      }
    }
    w = w * gen;
  }
  return w;
}

}  // namespace theta
