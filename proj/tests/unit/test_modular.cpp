#include <doctest.h>

#include <cmath>

#include <theta/modular.hpp>
#include <theta/theta_eval.hpp>

#include "test_util.hpp"

using namespace theta;
using namespace std::complex_literals;

namespace {

ComplexMatrix scalar(Complex a) { return ComplexMatrix::Constant(1, 1, a); }
ComplexVector vec1(Complex a) { return ComplexVector::Constant(1, a); }

ComplexMatrix indefinite() {
  ComplexMatrix m(2, 2);
  m << 0.21 - 1.0i, 0.33 + 0.17i, 0.33 + 0.17i, -0.12 + 1.4i;
  return m;
}

IntMatrix int2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  IntMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// The contour integral by the trapezoid rule on a wide fixed grid, traversed
// from s = +inf to s = -inf. Exponentially accurate for this analytic,
// Gaussian-decaying integrand.
Complex trapezoid_f(Complex z, Complex tau, int kpole) {
  const double h = 0.005;
  Complex acc = 0.0;
  for (int i = -4000; i <= 4000; ++i) acc += contour_integrand(i * h, z, tau, kpole, 0);
  return -kI * h * acc;
}

}  // namespace

TEST_SUITE("modular") {
  TEST_CASE("period matrix transforms") {
    const ComplexMatrix om = indefinite();
    CHECK(max_abs(omega_transform(ModularElement::identity(2), om) - om) < 1e-15);
    const IntMatrix b = int2(2, 1, 1, 0);
    CHECK(max_abs(omega_transform(ModularElement::translation(b), om) - (om - b.cast<double>().cast<Complex>())) <
          1e-15);
    CHECK(std::abs(omega_transform(ModularElement::inversion(1), scalar(1i))(0, 0) - 1i) < 1e-15);
    const Complex tau = 0.3 + 0.7i;
    CHECK(std::abs(omega_transform(ModularElement::inversion(1), scalar(tau))(0, 0) + 1.0 / tau) < 1e-15);
    CHECK_THROWS_WITH_CODE(omega_transform(ModularElement::inversion(2), ComplexMatrix::Zero(2, 2)),
                           ErrorCode::SingularDenominator);
  }

  TEST_CASE("modular transform results") {
    const ModularTransformResult id = modular_transform(ModularElement::identity(2), indefinite());
    REQUIRE(id.zeta.has_value());
    CHECK(*id.zeta == Complex(1.0, 0.0));
    CHECK(std::abs(id.jacobian_factor - 1.0) < 1e-15);
    CHECK_THROWS_WITH_CODE(modular_transform(ModularElement::translation(IntMatrix::Constant(1, 1, 1)), scalar(1i)),
                           ErrorCode::NotGamma12);
  }

  TEST_CASE("round trip and signature over random words") {
    SplitMix64 rng(3);
    int used = 0;
    for (int t = 0; t < 60; ++t) {
      const int n = t % 2 == 0 ? 1 : 2;
      const ComplexMatrix om = n == 1 ? scalar(0.15 + 1.1i) : indefinite();
      const ModularElement g = random_gamma12_word(n, static_cast<int>(rng.integer(1, 4)), rng);
      ComplexMatrix og;
      try {
        og = omega_transform(g, om);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularDenominator);
        continue;
      }
      ++used;
      CHECK(max_abs(omega_transform(g.inverse(), og) - om) < 1e-9);
      // Omega = (A Omega^g + B)(C Omega^g + D)^{-1}
      const ComplexMatrix a = g.A.cast<double>().cast<Complex>(), bb = g.B.cast<double>().cast<Complex>();
      const ComplexMatrix c = g.C.cast<double>().cast<Complex>(), d = g.D.cast<double>().cast<Complex>();
      CHECK(max_abs((a * og + bb) * sym_inverse(c * og + d) - om) < 1e-10);
      CHECK(signature(og.imag()) == signature(om.imag()));
    }
    CHECK(used >= 40);
  }

  TEST_CASE("identity action") {
    const Family c = cone_sum_family(positive_cone(SplitBasis::reference(2, 1)));
    const Evaluator same = modular_apply(ModularElement::identity(2), c, indefinite());
    const Evaluator plain = c(indefinite());
    for (const auto& z : sample_points(2, 5)) CHECK(std::abs(same.value(z) - plain.value(z)) < 1e-15);

    const RealVector K = (RealVector(2) << 1.0, -2.0).finished();
    const ComplexVector z = sample_points(2, 1).front();
    CHECK(std::abs(theta_g_term(K, z, indefinite(), ModularElement::identity(2)) - theta_term(K, z, indefinite())) <
          1e-15);
  }

  TEST_CASE("inverted single term by hand") {
    const Complex tau = 0.2 + 0.9i;
    const Complex z = 0.3 - 0.1i;
    const double K = 2.0;
    const Complex og = -1.0 / tau;  // Omega^g, and also C Omega^g + D
    const Complex expected = std::sqrt(og) * std::exp(kPi * kI * z * og * z) *
                             std::exp(kPi * kI * K * K * og + 2.0 * kPi * kI * K * og * z);
    const Complex got = theta_g_term(RealVector::Constant(1, K), vec1(z), scalar(tau), ModularElement::inversion(1));
    CHECK(std::abs(got - expected) < 1e-13);
  }

  TEST_CASE("inversion of the classical theta recovers the jacobi multiplier") {
    // theta(-z/tau, -1/tau) = sqrt(-i tau) exp(pi i z^2 / tau) theta(z, tau), so
    // f^g = zeta sqrt(-1/tau) sqrt(-i tau) theta; at tau = i the product of
    // roots is e^{i pi / 4} and zeta must be its inverse.
    const Family classical = cone_sum_family(positive_cone(SplitBasis::reference(1, 0)));
    const ComplexMatrix tau = scalar(1i);
    std::vector<ComplexVector> probes;
    for (Complex z : {0.0 + 0.0i, 0.3 + 0.0i, 0.1 - 0.2i, -0.4 + 0.1i, 0.25 + 0.25i}) probes.push_back(vec1(z));
    const ZetaFit fit = determine_zeta(ModularElement::inversion(1), classical, tau, classical(tau), probes);
    CHECK(std::abs(fit.zeta - std::polar(1.0, -kPi / 4.0)) < 1e-15);
    CHECK(fit.residual < 1e-10);
    CHECK(std::abs(std::pow(fit.zeta, 8) - 1.0) < 1e-8);

    // the same identity at a generic tau with the principal branches
    const Complex t = 0.4 + 1.3i;
    const Evaluator fg = modular_apply(ModularElement::inversion(1), classical, scalar(t));
    const Evaluator f = classical(scalar(t));
    const Complex factor = std::sqrt(-1.0 / t) * std::sqrt(-1i * t);
    for (const auto& z : probes) CHECK(std::abs(fg.value(z) - factor * f.value(z)) < 1e-9);
  }

  TEST_CASE("translations fix the cone sum") {
    const IntMatrix b = int2(2, 1, 1, -2);
    const Family c = cone_sum_family(positive_cone(SplitBasis::reference(2, 1)));
    const Evaluator cg = modular_apply(ModularElement::translation(b), c, indefinite());
    const Evaluator plain = c(indefinite());
    for (const auto& z : sample_points(2, 5)) CHECK(std::abs(cg.value(z) - plain.value(z)) < 1e-9);
  }

  TEST_CASE("composition ratio is a constant eighth root of unity") {
    SplitMix64 rng(8);
    const ComplexMatrix om = indefinite();
    int used = 0;
    for (int t = 0; t < 40 && used < 10; ++t) {
      const ModularElement g = random_gamma12_word(2, 2, rng);
      const ModularElement h = random_gamma12_word(2, 2, rng);
      const RealVector K = (RealVector(2) << 1.0, 1.0).finished();
      try {
        const Family single = theta_g_term_family(K, ModularElement::identity(2));
        const Evaluator twice = modular_apply(h, modular_family(g, single), om);
        const Evaluator once = modular_apply(h * g, single, om);
        const auto pts = sample_points(2, 5, rng());
        const Complex r0 = twice.value(pts[0]) / once.value(pts[0]);
        for (const auto& z : pts) CHECK(std::abs(twice.value(z) / once.value(z) - r0) < 1e-8);
        CHECK(std::abs(std::pow(r0, 8) - 1.0) < 1e-8);
        ++used;
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularDenominator);
      }
    }
    CHECK(used == 10);
  }

  TEST_CASE("zeta fitting") {
    const std::vector<Complex> a = {1.0, 2.0 + 1i, -0.5i};
    std::vector<Complex> b;
    for (Complex x : a) b.push_back(1i * x);
    const ZetaFit fit = determine_zeta(a, b);
    CHECK(std::abs(fit.zeta - 1i) < 1e-15);
    CHECK(fit.residual < 1e-15);
    CHECK(fit.runner_up > 0.5);
    CHECK_THROWS_WITH_CODE(determine_zeta(std::vector<Complex>{0.0}, std::vector<Complex>{0.0}),
                           ErrorCode::AmbiguousZeta);
    CHECK(determine_zeta(ModularElement::identity(1), {}, scalar(1i), Evaluator::constant(1, 1.0), {}).zeta ==
          Complex(1.0, 0.0));
  }

  TEST_CASE("contour integrand and quadrature") {
    const Complex spot = contour_integrand(0.0, 0.0, -1i, 1, 0);
    CHECK(std::abs(spot - std::exp(kPi / 4.0) / -2.0) < 1e-14);
    for (Complex tau : {-1.0i, -2.0i, 0.3 - 1.2i})
      for (Complex z : {0.0 + 0.0i, 0.3 + 0.2i, -0.7 + 0.0i}) {
        const Complex got = contour_f(z, tau, 1, 0);
        const Complex want = trapezoid_f(z, tau, 1);
        CHECK(std::abs(got - want) < 1e-10 * std::max(1.0, std::abs(want)));
      }
    CHECK_THROWS_WITH_CODE(contour_f(0.0, 1i, 1, 0), ErrorCode::NonconvergentContour);
    CHECK_THROWS_WITH_CODE(contour_f(0.0, 0.5, 1, 0), ErrorCode::NonconvergentContour);
  }

  TEST_CASE("tau action on the contour integral") {
    const Complex tau = -1i, z = 0.3;
    const Complex lhs = std::exp(2.0 * kPi * kI * z + kPi * kI * tau) * contour_f(z + tau, tau, 1, 0) -
                        contour_f(z, tau, 1, 0);
    CHECK(std::abs(lhs + std::exp(kPi * kI * tau + 2.0 * kPi * kI * z)) < 1e-8);
  }

  TEST_CASE("case three at n = 1") {
    const std::vector<Complex> probes = {0.0, 0.3, 0.3 + 0.2i, -0.7, 0.1 - 0.1i};
    for (Complex tau : {-1.0i, -2.0i, 0.3 - 1.2i}) {
      ZetaFit fit;
      const Report r = verify_case3_1d(probes, tau, 1, 0, 1e-8, &fit);
      CHECK(r.pass());
      CHECK(r.checks.size() == 2 * probes.size() + 2);
      CHECK(std::abs(std::pow(fit.zeta, 8) - 1.0) < 1e-8);
    }
    // Other poles and shifts: the values grow like e^{pi |tau| k^2}, so the
    // tau-action identity is checked relative to its right-hand side.
    const Complex tau = -1.5i;
    for (const auto& [k, n] : std::vector<std::pair<int, int>>{{2, 0}, {2, 1}, {0, 3}}) {
      for (Complex z : probes) {
        const Complex lhs = std::exp(2.0 * kPi * kI * z + kPi * kI * tau) * contour_f(z + tau, tau, k, n) -
                            contour_f(z, tau, k, n);
        const Complex rhs = -std::exp(kPi * kI * tau * double(k * k) + 2.0 * kPi * kI * double(k) * z);
        CHECK(std::abs(lhs - rhs) < 1e-9 * std::abs(rhs));
      }
    }
  }
}
