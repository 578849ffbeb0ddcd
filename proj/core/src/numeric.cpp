#include "theta/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "theta/errors.hpp"

namespace theta {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::NotSymplectic: return "NotSymplectic";
    case ErrorCode::NotGamma12: return "NotGamma12";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::SignatureBroken: return "SignatureBroken";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::NonPositiveRestriction: return "NonPositiveRestriction";
    case ErrorCode::NotSplitAfterTransform: return "NotSplitAfterTransform";
    case ErrorCode::RadiusOverflow: return "RadiusOverflow";
    case ErrorCode::BadCharacteristic: return "BadCharacteristic";
    case ErrorCode::AmbiguousZeta: return "AmbiguousZeta";
    case ErrorCode::NonconvergentContour: return "NonconvergentContour";
    case ErrorCode::WindowOverflow: return "WindowOverflow";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

RealMatrix symmetrize_upper(const RealMatrix& q) {
  if (q.rows() != q.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "symmetric matrix must be square");
  }
  RealMatrix s = q;
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) s(i, j) = s(j, i);
  }
  return s;
}

RealVector symmetric_eigenvalues(const RealMatrix& q) {
  const RealMatrix s = symmetrize_upper(q);
  if (s.size() == 0) return RealVector(0);
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::DegenerateForm, "eigenvalue iteration did not converge");
  }
  return solver.eigenvalues();
}

namespace {

double degeneracy_threshold(const RealVector& ev) {
  double largest = 0.0;
  for (double v : ev) largest = std::max(largest, std::abs(v));
  return kTolDegenerate * largest;
}

}  // namespace

Signature signature(const RealMatrix& q) {
  const RealVector ev = symmetric_eigenvalues(q);
  const double thr = degeneracy_threshold(ev);
  Signature sig;
  for (double v : ev) {
    if (std::abs(v) <= thr || v == 0.0) {
      throw Error(ErrorCode::DegenerateForm, "quadratic form has a (near-)zero eigenvalue");
    }
    (v < 0 ? sig.neg : sig.pos) += 1;
  }
  return sig;
}

bool is_positive_definite(const RealMatrix& q) {
  if (q.size() == 0) return true;
  const RealVector ev = symmetric_eigenvalues(q);
  const double thr = degeneracy_threshold(ev);
  return ev.minCoeff() > thr && ev.minCoeff() > 0.0;
}

double max_abs(const ComplexMatrix& m) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) r = std::max(r, std::abs(m.data()[i]));
  return r;
}

ComplexMatrix sym_inverse(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "inverse of a non-square matrix");
  }
  const auto n = m.rows();
  Eigen::FullPivLU<ComplexMatrix> lu(m);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
  }
  ComplexMatrix inv = lu.inverse();
  const double residual = max_abs(m * inv - ComplexMatrix::Identity(n, n));
  if (!(residual < kTolLinalg)) {
    throw Error(ErrorCode::SingularMatrix, "ill-conditioned inverse, residual " + std::to_string(residual));
  }
  return inv;
}

Complex principal_sqrt(Complex z) {
  Complex r = std::sqrt(z);
  // std::sqrt maps the lower side of the negative real axis to -i|z|^(1/2).
  if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) r = -r;
  return r;
}

Complex principal_sqrt_det(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  }
  const Complex det = m.size() == 0 ? Complex(1.0) : Complex(m.determinant());
  if (det == Complex(0.0)) throw Error(ErrorCode::SingularMatrix, "zero determinant");
  return principal_sqrt(det);
}

bool is_complex_symmetric(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  double scale = 1.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex v = m.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    scale = std::max(scale, std::abs(v));
  }
  return max_abs(m - m.transpose()) <= tol * scale;
}

PeriodMatrix::PeriodMatrix(ComplexMatrix omega) : omega_(std::move(omega)) {
  if (omega_.rows() == 0 || !is_complex_symmetric(omega_)) {
    throw Error(ErrorCode::InvalidInput, "period matrix must be square, finite and symmetric");
  }
  signature_ = theta::signature(omega_.imag());
}

}  // namespace theta
