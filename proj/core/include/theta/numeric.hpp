#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace theta {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

inline constexpr double kPi = 3.14159265358979323846;
inline const Complex kI{0.0, 1.0};

/// Eigenvalues within this fraction of the largest |eigenvalue| count as zero.
inline constexpr double kTolDegenerate = 1e-9;
/// Max-norm tolerance on M * inverse(M) - I.
inline constexpr double kTolLinalg = 1e-10;

struct Signature {
  int neg = 0;
  int pos = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Mirrors the upper triangle into the lower one. Symmetric inputs
/// everywhere in the library are read through this.
RealMatrix symmetrize_upper(const RealMatrix& q);

/// Eigenvalues of the symmetric matrix (upper triangle authoritative), ascending.
RealVector symmetric_eigenvalues(const RealMatrix& q);

/// Counts of negative and positive eigenvalues. Throws DegenerateForm when an
/// eigenvalue is within kTolDegenerate (relative) of zero.
Signature signature(const RealMatrix& q);

/// True iff the symmetric matrix is positive definite (with the same relative
/// degeneracy margin). A 0x0 matrix counts as positive definite.
bool is_positive_definite(const RealMatrix& q);

/// Inverse of a square complex matrix, checked: throws SingularMatrix when the
/// matrix is not invertible or the round-trip residual exceeds kTolLinalg.
ComplexMatrix sym_inverse(const ComplexMatrix& m);

/// Square root with argument in (-pi/2, pi/2].
Complex principal_sqrt(Complex z);

/// Principal square root of det(m). Throws SingularMatrix if det(m) == 0.
Complex principal_sqrt_det(const ComplexMatrix& m);

/// Max-norm of a complex matrix.
double max_abs(const ComplexMatrix& m);

/// Checks squareness, finiteness and symmetry (to `tol`, relative).
bool is_complex_symmetric(const ComplexMatrix& m, double tol = 1e-12);

/// Validated complex symmetric matrix with nondegenerate imaginary part.
class PeriodMatrix {
 public:
  explicit PeriodMatrix(ComplexMatrix omega);

  const ComplexMatrix& matrix() const noexcept { return omega_; }
  RealMatrix imag() const { return omega_.imag(); }
  int n() const noexcept { return static_cast<int>(omega_.rows()); }
  /// Number of negative eigenvalues of Im(omega).
  int k() const noexcept { return signature_.neg; }
  Signature signature() const noexcept { return signature_; }

 private:
  ComplexMatrix omega_;
  Signature signature_;
};

}  // namespace theta
