#pragma once

#include "theta/evaluator.hpp"
#include "theta/numeric.hpp"

namespace theta {

inline constexpr double kHeatEps = 1e-4;

/// Analytic heat residual on a single term Theta_K at Z. The omega-derivative
/// treats the n^2 entries of Omega as independent coordinates, so
/// d Theta_K / d omega_ij = pi i K_i K_j Theta_K, while
/// (1 / 4 pi i) d^2 Theta_K / dZ_i dZ_j = (2 pi i K_i)(2 pi i K_j) / (4 pi i) Theta_K.
/// Returns |lhs - rhs| / max(1, |lhs|). Indices are 0-based.
double heat_term_residual(const RealVector& K, const ComplexMatrix& omega, int i, int j, const ComplexVector& Z);

/// |H F|(Z) by central differences, normalized by max(1, |d F / d omega_ij|).
/// The omega-derivative is taken along E = E_ii (i == j) or E_ij + E_ji
/// (i != j) and divided by 1 or 2 respectively; the Z-derivative uses the
/// second-order central stencil with the same step. Throws SignatureBroken if
/// a perturbed period matrix changes the signature of its imaginary part.
double heat_fd_residual(const Family& family, const ComplexMatrix& omega, const ComplexVector& Z, int i, int j,
                        double eps = kHeatEps);

}  // namespace theta
