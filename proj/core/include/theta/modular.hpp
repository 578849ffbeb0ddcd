#pragma once

#include <optional>
#include <vector>

#include "theta/evaluator.hpp"
#include "theta/lattice.hpp"
#include "theta/numeric.hpp"
#include "theta/report.hpp"

namespace theta {

/// Omega^g = (tD Omega - tB)(-tC Omega + tA)^{-1}, symmetrized.
/// Throws SingularDenominator when -tC Omega + tA is not invertible.
ComplexMatrix omega_transform(const ModularElement& g, const ComplexMatrix& omega);

/// C Omega^g + D.
ComplexMatrix modular_jacobian(const ModularElement& g, const ComplexMatrix& omega_g);

struct ModularTransformResult {
  ComplexMatrix omega_g;
  Complex jacobian_factor{1.0, 0.0};  // principal sqrt det(C Omega^g + D)
  std::optional<Complex> zeta;
  double zeta_residual = 0.0;
};

/// Omega^g and the jacobian factor. Requires g in Gamma_{1,2} (NotGamma12) and
/// checks that Im Omega^g keeps the signature of Im Omega (SignatureBroken).
ModularTransformResult modular_transform(const ModularElement& g, const ComplexMatrix& omega);

/// f^g(Z, Omega) = zeta sqrt det(C Omega^g + D) exp(pi i tZ C t(C Omega^g + D) Z)
///                 f(t(C Omega^g + D) Z, Omega^g).
Evaluator modular_apply(const ModularElement& g, const Family& family, const ComplexMatrix& omega,
                        Complex zeta = {1.0, 0.0});
/// The same as an Omega-family (zeta held fixed).
Family modular_family(const ModularElement& g, const Family& family, Complex zeta = {1.0, 0.0});

/// Theta^g_K(Z, Omega) with the principal-branch jacobian factor.
Complex theta_g_term(const RealVector& K, const ComplexVector& Z, const ComplexMatrix& omega,
                     const ModularElement& g, Complex zeta = {1.0, 0.0});

/// Single-term family Omega -> (Z -> Theta^g_K(Z, Omega)).
Family theta_g_term_family(const RealVector& K, const ModularElement& g, Complex zeta = {1.0, 0.0});

struct ZetaFit {
  Complex zeta{1.0, 0.0};
  double residual = 0.0;         // max_p |zeta a_p - b_p| / max(1, |b_p|)
  double runner_up = 0.0;        // the same for the second best root
};

/// Picks the 8th root of unity zeta minimizing the worst relative residual of
/// zeta * unscaled[p] = target[p]. Throws AmbiguousZeta when the runner-up
/// is within a factor 2 of the best.
ZetaFit determine_zeta(const std::vector<Complex>& unscaled, const std::vector<Complex>& target);

/// Fits zeta so that modular_apply(g, family, omega, zeta) agrees with
/// `reference` at the probes. The identity element returns 1 directly.
ZetaFit determine_zeta(const ModularElement& g, const Family& family, const ComplexMatrix& omega,
                       const Evaluator& reference, const std::vector<ComplexVector>& probes);

/// Integrand of the one-dimensional contour coboundary
///   e^{pi i tau y^2} e^{2 pi i (z + n) y} / (e^{2 pi i y} - 1)
/// at y = (kpole - 1/2) + i s (without the dy = i ds factor).
Complex contour_integrand(double s, Complex z, Complex tau, int kpole, int nshift);

struct ContourOptions {
  double tol = 1e-12;
  int initial_panels = 16;
  int max_panels = 4096;
};

/// Integral of the integrand over Re y = kpole - 1/2, traversed downwards
/// (s from +inf to -inf). With this orientation the N = 1 action gives
/// -2 pi i Res_{y = kpole} exactly; the opposite orientation only flips signs,
/// which the 8th root zeta absorbs for the M = 1 identity but not for this one.
/// Composite 20-point Gauss-Legendre on a window around the Gaussian peak; panels doubled until consecutive values differ by < tol/4
/// (or by a few ulps of the integrand L1 norm when cancellation dominates).
/// Throws NonconvergentContour if Im tau >= 0 or the panels run out.
Complex contour_f(Complex z, Complex tau, int kpole, int nshift, const ContourOptions& opts = {});

/// Checks, for each probe z:
///   f(z + 1) - f(z) = zeta tau^{-1/2} exp(-pi i (z + n)^2 / tau)   (M = 1 action)
///   e^{2 pi i z + pi i tau} f(z + tau) - f(z) = -exp(pi i tau k^2 + 2 pi i k z)   (N = 1 action)
/// with a single fitted zeta; also its constancy across probes and zeta^8 = 1.
Report verify_case3_1d(const std::vector<Complex>& probes, Complex tau, int kpole = 1, int nshift = 0,
                       double tol = 1e-8, ZetaFit* fit = nullptr);

}  // namespace theta
