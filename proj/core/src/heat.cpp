#include "theta/heat.hpp"

#include <algorithm>
#include <cmath>

#include "theta/errors.hpp"
#include "theta/theta_eval.hpp"

namespace theta {

namespace {

void check_indices(int n, int i, int j) {
  if (i < 0 || j < 0 || i >= n || j >= n) throw Error(ErrorCode::InvalidInput, "heat operator index out of range");
}

}  // namespace

double heat_term_residual(const RealVector& K, const ComplexMatrix& omega, int i, int j, const ComplexVector& Z) {
  check_indices(static_cast<int>(K.size()), i, j);
  const Complex term = theta_term(K, Z, omega);
  const Complex lhs = kPi * kI * K(i) * K(j) * term;
  const Complex rhs = (2.0 * kPi * kI * K(i)) * (2.0 * kPi * kI * K(j)) / (4.0 * kPi * kI) * term;
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

double heat_fd_residual(const Family& family, const ComplexMatrix& omega, const ComplexVector& Z, int i, int j,
                        double eps) {
  const int n = static_cast<int>(omega.rows());
  check_indices(n, i, j);
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidInput, "finite-difference step must be positive");

  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(i, j) = 1.0;
  e(j, i) = 1.0;
  const double scale = i == j ? 1.0 : 2.0;
  const ComplexMatrix plus = omega + eps * e;
  const ComplexMatrix minus = omega - eps * e;
  const Signature sig = signature(omega.imag());
  if (signature(plus.imag()) != sig || signature(minus.imag()) != sig) {
    throw Error(ErrorCode::SignatureBroken, "perturbation changes the signature of Im Omega");
  }
  const Complex d_omega = (family(plus).value(Z) - family(minus).value(Z)) / (2.0 * eps) / scale;

  const Evaluator f = family(omega);
  auto at = [&](double si, double sj) {
    ComplexVector w = Z;
    w(i) += si * eps;
    w(j) += sj * eps;
    return f.value(w);
  };
  Complex d_zz;
  if (i == j) {
    d_zz = (at(0.5, 0.5) - 2.0 * f.value(Z) + at(-0.5, -0.5)) / (eps * eps);
  } else {
    d_zz = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * eps * eps);
  }
  return std::abs(d_omega - d_zz / (4.0 * kPi * kI)) / std::max(1.0, std::abs(d_omega));
}

}  // namespace theta
