#include <doctest.h>

#include <cmath>

#include <theta/theta_eval.hpp>

#include "test_util.hpp"

using namespace theta;
using namespace std::complex_literals;

namespace {

ComplexMatrix scalar(Complex a) { return ComplexMatrix::Constant(1, 1, a); }

ComplexMatrix diag2(Complex a, Complex b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

ComplexVector vec(std::initializer_list<Complex> v) {
  ComplexVector out(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (Complex x : v) out(i++) = x;
  return out;
}

// Direct sum of exp(pi i tau (m + a)^2 + 2 pi i (m + a) z) over |m| <= 10.
Complex brute_1d(Complex tau, Complex z, double a = 0.0) {
  Complex s = 0.0;
  for (int m = -10; m <= 10; ++m) {
    const double k = m + a;
    s += std::exp(kPi * kI * tau * k * k + 2.0 * kPi * kI * k * z);
  }
  return s;
}

ConeSpec full_line() { return positive_cone(SplitBasis::reference(1, 0)); }

}  // namespace

TEST_SUITE("theta_eval") {
  TEST_CASE("single terms") {
    CHECK(theta_term(RealVector::Zero(2), vec({0.3 + 0.1i, -0.2}), diag2(-1i, 1i)) == Complex(1.0, 0.0));
    const Complex t1 = theta_term(RealVector::Constant(1, 1.0), vec({0.0}), scalar(1i));
    CHECK(std::abs(t1 - 0.04321391826377226) < 1e-15);
    const Complex t2 = theta_term(RealVector::Constant(1, 2.0), vec({0.5}), scalar(1i));
    CHECK(std::abs(t2 - std::exp(-4.0 * kPi)) < 1e-18);
  }

  TEST_CASE("classical theta constant") {
    const ThetaValue v = cone_sum(vec({0.0}), scalar(1i), full_line());
    const double brute = brute_1d(1i, 0.0).real();
    const double closed = std::pow(kPi, 0.25) / std::tgamma(0.75);
    CHECK(std::abs(v.value - brute) < 1e-10);
    CHECK(std::abs(v.value.real() - closed) < 1e-9);
    CHECK(std::abs(v.value.real() - 1.086434811213308) < 1e-12);
    CHECK(v.tail <= kTolSum);
  }

  TEST_CASE("empty positive cone sums to one") {
    const ThetaValue v = cone_sum(vec({0.0}), scalar(-1i), positive_cone(SplitBasis::reference(1, 1)));
    CHECK(v.value == Complex(1.0, 0.0));
    CHECK(v.tail == 0.0);
  }

  TEST_CASE("indefinite cone along the positive axis") {
    const ThetaValue v = cone_sum(vec({0.0, 0.0}), diag2(-1i, 1i), positive_cone(SplitBasis::reference(2, 1)));
    CHECK(std::abs(v.value - 1.086434811213308) < 1e-10);
  }

  TEST_CASE("sums at generic arguments match brute force") {
    for (Complex z : {0.2 + 0.1i, -0.4 - 0.25i, 0.0 + 0.3i})
      for (Complex tau : {1i, 0.3 + 0.8i, -0.5 + 2.0i}) {
        const ThetaValue v = cone_sum(vec({z}), scalar(tau), full_line());
        CHECK(std::abs(v.value - brute_1d(tau, z)) < 1e-10);
      }
  }

  TEST_CASE("tail bound") {
    const ComplexVector z0 = vec({0.0});
    CHECK(tail_bound(positive_cone(SplitBasis::reference(1, 1)), scalar(-1i), z0, 0.0) == 0.0);
    const double b10 = tail_bound(full_line(), scalar(1i), z0, 10.0);
    double explicit_tail = 0.0;
    for (int m = 11; m < 40; ++m) explicit_tail += 2.0 * std::exp(-kPi * m * m);
    CHECK(b10 <= 1e-40);
    CHECK(b10 >= explicit_tail);
    CHECK(tail_bound(full_line(), scalar(1i), z0, 6.0) <= tail_bound(full_line(), scalar(1i), z0, 5.0));
  }

  TEST_CASE("reported tails are true bounds") {
    ComplexMatrix omega(2, 2);
    omega << 0.21 - 1.0i, 0.33 + 0.17i, 0.33 + 0.17i, -0.12 + 1.4i;
    const ConeSpec cone = positive_cone(SplitBasis::reference(2, 1));
    ComplexMatrix definite(2, 2);
    definite << 0.1 + 1.1i, 0.2 + 0.3i, 0.2 + 0.3i, -0.3 + 0.9i;
    const ConeSpec plane = positive_cone(SplitBasis::reference(2, 0));
    for (const auto& z : sample_points(2, 5)) {
      for (double r : {0.5, 1.0, 1.5, 2.0, 3.0}) {
        const ThetaValue a = cone_sum_at_radius(z, omega, cone, r);
        const ThetaValue b = cone_sum_at_radius(z, omega, cone, 2.0 * r + 4.0);
        CHECK(std::abs(a.value - b.value) <= a.tail + b.tail + 1e-15);
        const ThetaValue c = cone_sum_at_radius(z, definite, plane, r);
        const ThetaValue d = cone_sum_at_radius(z, definite, plane, 2.0 * r + 4.0);
        CHECK(std::abs(c.value - d.value) <= c.tail + d.tail + 1e-15);
      }
    }
  }

  TEST_CASE("radius overflow") {
    SumOptions tight{1e-10, 0.75};
    CHECK_THROWS_WITH_CODE(cone_sum(vec({0.0}), scalar(1i), full_line(), tight), ErrorCode::RadiusOverflow);
  }

  TEST_CASE("evaluation is deterministic") {
    const Evaluator f = cone_sum_evaluator(diag2(-1i, 1i), positive_cone(SplitBasis::reference(2, 1)));
    const ComplexVector z = vec({0.1 + 0.05i, -0.3 + 0.2i});
    const Complex a = f.value(z);
    const Complex b = f.value(z);
    CHECK(a.real() == b.real());
    CHECK(a.imag() == b.imag());
  }

  TEST_CASE("characteristics") {
    const Characteristic half = Characteristic::from_rational((IntVector(1) << 2).finished(), {{1, 2}});
    CHECK(half.a()(0) == 0.5);
    const ThetaValue v = theta_char(half, vec({0.0}), scalar(1i), full_line());
    CHECK(std::abs(v.value - brute_1d(1i, 0.0, 0.5)) < 1e-10);

    const Characteristic zero = Characteristic::from_rational((IntVector(1) << 2).finished(), {{0, 1}});
    const ComplexVector z = vec({0.2 - 0.1i});
    CHECK(theta_char(zero, z, scalar(1i), full_line()).value == cone_sum(z, scalar(1i), full_line()).value);

    // reduction mod Z^n
    const Characteristic wrapped = Characteristic::from_rational((IntVector(1) << 2).finished(), {{-1, 2}});
    CHECK(wrapped.numer(0) == 1);

    CHECK_THROWS_WITH_CODE(Characteristic::from_rational((IntVector(1) << 2).finished(), {{1, 3}}),
                           ErrorCode::BadCharacteristic);
    CHECK_THROWS_WITH_CODE(Characteristic::from_rational((IntVector(2) << 2, 3).finished(), {{0, 1}, {0, 1}}),
                           ErrorCode::BadCharacteristic);
  }

  TEST_CASE("reduced characteristic classes") {
    CHECK(reduced_characteristics((IntVector(2) << 1, 2).finished()).size() == 2);
    const auto four = reduced_characteristics((IntVector(2) << 2, 2).finished());
    REQUIRE(four.size() == 4);
    CHECK(four[1].numer == (IntVector(2) << 0, 1).finished());
    CHECK(four[2].numer == (IntVector(2) << 1, 0).finished());
    CHECK(reduced_characteristics((IntVector(3) << 1, 2, 6).finished()).size() == 12);
  }

  TEST_CASE("characteristics are cone shifts") {
    const ComplexMatrix omega = diag2(0.1 - 1.0i, 0.2 + 1.3i);
    const ConeSpec plain = positive_cone(SplitBasis::reference(2, 1));
    ConeSpec shifted = plain;
    shifted.shift = (RealVector(2) << 0.0, 0.5).finished();
    const IntVector delta = (IntVector(2) << 1, 2).finished();
    const Characteristic half = Characteristic::from_rational(delta, {{0, 1}, {1, 2}});
    // an integral a reduces to the trivial class
    const Characteristic integral = Characteristic::from_rational(delta, {{3, 1}, {-2, 1}});
    CHECK(integral.numer == IntVector::Zero(2));
    for (const auto& z : sample_points(2, 5)) {
      CHECK(std::abs(theta_char(half, z, omega, plain).value - cone_sum(z, omega, shifted).value) < 1e-10);
      CHECK(std::abs(theta_char(integral, z, omega, plain).value - cone_sum(z, omega, plain).value) < 1e-10);
    }
  }

  TEST_CASE("lattice action") {
    const ComplexMatrix omega = diag2(-1i, 1i);
    const ConeSpec cone = positive_cone(SplitBasis::reference(2, 1));
    const Evaluator f = cone_sum_evaluator(omega, cone);
    const auto samples = sample_points(2, 5);

    const IntVector zero = IntVector::Zero(2);
    for (const auto& z : samples) CHECK(lambda_action(zero, zero, f, omega).value(z) == f.value(z));

    // (M, 0) is a translation by M.
    const IntVector m = (IntVector(2) << 1, -2).finished();
    for (const auto& z : samples) {
      const ComplexVector moved = z + m.cast<double>().cast<Complex>();
      CHECK(std::abs(lambda_action(m, zero, f, omega).value(z) - f.value(moved)) < 1e-12);
    }

    // N_1 moves the cone off itself: N_1 . sum over Gamma_+ = sum over Gamma_+ + N_1.
    ConeSpec moved_cone = cone;
    moved_cone.shift = (RealVector(2) << 1.0, 0.0).finished();
    const IntVector n1 = (IntVector(2) << 1, 0).finished();
    const Evaluator acted = lambda_action(zero, n1, f, omega);
    for (const auto& z : samples) {
      CHECK(std::abs(acted.value(z) - cone_sum(z, omega, moved_cone).value) < 1e-9);
    }
  }

  TEST_CASE("lattice action composes additively") {
    ComplexMatrix omega(2, 2);
    omega << 0.21 - 1.0i, 0.33 + 0.17i, 0.33 + 0.17i, -0.12 + 1.4i;
    const Evaluator f = cone_sum_evaluator(omega, positive_cone(SplitBasis::reference(2, 1)));
    SplitMix64 rng(41);
    for (int t = 0; t < 10; ++t) {
      IntVector m1(2), n1(2), m2(2), n2(2);
      for (int i = 0; i < 2; ++i) {
        m1(i) = rng.integer(-2, 2);
        m2(i) = rng.integer(-2, 2);
        n1(i) = rng.integer(-1, 1);
        n2(i) = rng.integer(-1, 1);
      }
      const Evaluator twice = lambda_action(m1, n1, lambda_action(m2, n2, f, omega), omega);
      const Evaluator once = lambda_action(m1 + m2, n1 + n2, f, omega);
      const ComplexVector z = sample_points(2, 1, rng()).front();
      const Complex a = twice.value(z);
      const Complex b = once.value(z);
      CHECK(std::abs(a - b) / std::max(1.0, std::abs(b)) < 1e-10);
    }
  }

  TEST_CASE("cocycle residuals") {
    const auto s1 = sample_points(1, 5);
    const Evaluator classical = cone_sum_evaluator(scalar(1i), full_line());
    const Report r1 = verify_cocycle(classical, SplitBasis::reference(1, 0).as_lattice_basis(), 0, scalar(1i), s1, 1e-9);
    CHECK(r1.pass());
    CHECK(r1.checks.size() == 2);

    const Evaluator one = cone_sum_evaluator(scalar(-1i), positive_cone(SplitBasis::reference(1, 1)));
    const Report r2 = verify_cocycle(one, SplitBasis::reference(1, 1).as_lattice_basis(), 1, scalar(-1i), s1);
    REQUIRE(r2.checks.size() == 1);
    CHECK(r2.checks[0].residual == 0.0);

    const Evaluator c = cone_sum_evaluator(diag2(-1i, 1i), positive_cone(SplitBasis::reference(2, 1)));
    const Report r3 =
        verify_cocycle(c, SplitBasis::reference(2, 1).as_lattice_basis(), 1, diag2(-1i, 1i), sample_points(2, 5));
    CHECK(r3.pass());
    CHECK(r3.checks.size() == 3);
  }

  TEST_CASE("wedge coboundary") {
    const ComplexMatrix omega = diag2(-1i, 2i);
    const SplitBasis basis = SplitBasis::reference(2, 1);
    const Evaluator f = wedge_function(basis, omega, 1);
    const ConeSpec cone = positive_cone(basis);
    const ConeSpec moved = positive_cone(type_ic_transform(basis, 1));
    const IntVector zero = IntVector::Zero(2);
    const IntVector e1 = (IntVector(2) << 1, 0).finished();
    const IntVector e2 = (IntVector(2) << 0, 1).finished();
    for (const auto& z : sample_points(2, 5)) {
      const Complex base = f.value(z);
      const Complex d1 = lambda_action(zero, e1, f, omega).value(z) - base;
      const Complex d2 = lambda_action(zero, e2, f, omega).value(z) - base;
      const Complex plus = cone_sum(z, omega, cone).value;
      const Complex plus_g = cone_sum(z, omega, moved).value;
      CHECK(std::abs(d1 - (plus - plus_g)) < 1e-8);
      CHECK(std::abs(d2 + plus_g) < 1e-8);
    }
    CHECK_THROWS_WITH_CODE(wedge_function(basis, diag2(-1i, 0.5i), 1), ErrorCode::NotSplitAfterTransform);
  }
}
