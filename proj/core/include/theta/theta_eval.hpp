#pragma once

#include <utility>
#include <vector>

#include "theta/evaluator.hpp"
#include "theta/lattice.hpp"
#include "theta/numeric.hpp"
#include "theta/report.hpp"

namespace theta {

/// Default tolerances: lattice sums, identity residuals, finite differences.
inline constexpr double kTolSum = 1e-10;
inline constexpr double kTolCocycle = 1e-8;
inline constexpr double kTolFiniteDifference = 1e-6;

struct SumOptions {
  double tol = kTolSum;
  double radius_max = 64.0;
};

/// exp(pi i tK Omega K + 2 pi i tK Z); K may be rational (characteristics).
Complex theta_term(const RealVector& K, const ComplexVector& Z, const ComplexMatrix& omega);

/// Upper bound for sum of |Theta_K(Z, Omega)| over cone points with
/// tK (Im Omega) K > radius^2.
///
/// Write K = K* + G (c - c*) where K* minimizes the norm over the affine span
/// and A = tG (Im Omega) G. With u = |A^{1/2}(c - c*)|, q0 = norm(K*),
/// alpha = |A^{-1/2} tG Im Z| and beta = tK* Im Z,
///
///   |Theta_K| <= h(u) = exp(-pi u^2 + 2 pi alpha u - pi q0 - 2 pi beta).
///
/// The number of points with u <= t is at most V_r (t + delta)^r / sqrt(det A),
/// delta = sqrt(r lambda_max(A)) / 2 (half-diameter of a unit coefficient cell).
/// The excluded points are covered by unit shells [rho + j, rho + j + 1),
/// rho^2 = radius^2 - q0; each shell contributes at most
/// count(rho + j + 1) * max h on the shell. Once h is decreasing and
/// consecutive shell terms shrink by a ratio < 1/2, the remainder is closed
/// with a geometric series (the ratio is monotone decreasing from there on).
double tail_bound(const ConeSpec& cone, const ComplexMatrix& omega, const ComplexVector& Z, double radius);

/// Compensated sum over enumerate_cone at a fixed radius; tail from tail_bound.
ThetaValue cone_sum_at_radius(const ComplexVector& Z, const ComplexMatrix& omega, const ConeSpec& cone,
                              double radius);

/// Sum of Theta_K over the cone, radius grown until tail_bound <= tol.
/// Throws RadiusOverflow past opts.radius_max.
ThetaValue cone_sum(const ComplexVector& Z, const ComplexMatrix& omega, const ConeSpec& cone,
                    const SumOptions& opts = {});

/// Radius at which tail_bound first drops below tol (schedule R0 + 0.5 j).
double radius_for_tolerance(const ConeSpec& cone, const ComplexMatrix& omega, const ComplexVector& Z,
                            const SumOptions& opts);

/// a in Delta^{-1} Z^n / Z^n, stored as a_i = numer_i / delta_i with
/// 0 <= numer_i < delta_i.
struct Characteristic {
  IntVector delta;
  IntVector numer;

  int n() const noexcept { return static_cast<int>(delta.size()); }
  RealVector a() const;
  std::int64_t det_delta() const;

  /// Validates delta_1 | delta_2 | ... and Delta a integral (BadCharacteristic),
  /// then reduces mod Z^n.
  static Characteristic from_rational(const IntVector& delta,
                                      const std::vector<std::pair<std::int64_t, std::int64_t>>& a);
};

/// All det(Delta) classes of Delta^{-1} Z^n / Z^n, in lexicographic order.
std::vector<Characteristic> reduced_characteristics(const IntVector& delta);

/// Cone sum with K replaced by K + a.
ThetaValue theta_char(const Characteristic& ch, const ComplexVector& Z, const ComplexMatrix& omega,
                      const ConeSpec& cone, const SumOptions& opts = {});

/// Evaluator of the cone sum (and its Omega-family).
Evaluator cone_sum_evaluator(const ComplexMatrix& omega, const ConeSpec& cone, const SumOptions& opts = {});
Family cone_sum_family(const ConeSpec& cone, const SumOptions& opts = {});
Evaluator theta_char_evaluator(const Characteristic& ch, const ComplexMatrix& omega, const ConeSpec& cone,
                               const SumOptions& opts = {});
Family theta_char_family(const Characteristic& ch, const ConeSpec& cone, const SumOptions& opts = {});

/// (M, N) acting on f with polarization type Delta (empty = identity).
Evaluator lambda_action(const IntVector& m, const IntVector& nvec, const Evaluator& f, const ComplexMatrix& omega,
                        const IntVector& delta = {});

struct WedgeOptions {
  double tol = kTolSum;
  int initial_box = 4;
  int max_box = 256;
};

/// The convergent signed sum between Gamma_+ and its type-Ic image (paper
/// index k). Each evaluation doubles the coefficient box until consecutive
/// truncations differ by less than tol; that difference is reported as the
/// tail. Throws NotSplitAfterTransform (at construction) and RadiusOverflow.
Evaluator wedge_function(const SplitBasis& basis, const ComplexMatrix& omega, int k,
                         const WedgeOptions& opts = {});

/// Applies every differential that leaves position (1..k; empty) to the
/// cochain c and reports max |lambda . c - c| over the samples: all M-type
/// columns of the lattice basis and the N-type columns k+1..n.
Report verify_cocycle(const Evaluator& c, const IntMatrix& lattice_basis, int k, const ComplexMatrix& omega,
                      const std::vector<ComplexVector>& samples, double tol = kTolCocycle,
                      const IntVector& delta = {});

}  // namespace theta
