#include <doctest.h>

#include <thread>
#include <vector>

#include <theta/errors.hpp>
#include <theta/numeric.hpp>
#include <theta/random.hpp>
#include <theta/summation.hpp>

#include "test_util.hpp"

using namespace theta;
using namespace std::complex_literals;

TEST_SUITE("numeric") {
  TEST_CASE("signature of small forms") {
    RealMatrix hyperbolic(2, 2);
    hyperbolic << 0, 1, 1, 0;
    CHECK(signature(hyperbolic) == Signature{1, 1});

    RealMatrix diag = RealMatrix::Zero(3, 3);
    diag.diagonal() << -2, 3, -0.5;
    CHECK(signature(diag) == Signature{2, 1});

    RealMatrix singular(2, 2);
    singular << 1, 1, 1, 1;
    CHECK_THROWS_WITH_CODE(signature(singular), ErrorCode::DegenerateForm);
  }

  TEST_CASE("only the upper triangle is read") {
    RealMatrix q(2, 2);
    q << 2, 1, 99, 2;  // the lower entry is garbage
    const RealMatrix s = symmetrize_upper(q);
    CHECK(s(1, 0) == 1.0);
    CHECK(signature(q) == Signature{0, 2});
  }

  TEST_CASE("positive definiteness") {
    CHECK(is_positive_definite(RealMatrix::Identity(3, 3)));
    CHECK_FALSE(is_positive_definite(-RealMatrix::Identity(2, 2)));
    CHECK(is_positive_definite(RealMatrix(0, 0)));
  }

  TEST_CASE("inverse of [[1, i], [i, 1]]") {
    ComplexMatrix m(2, 2);
    m << 1.0, 1i, 1i, 1.0;
    ComplexMatrix expected(2, 2);
    expected << 0.5, -0.5i, -0.5i, 0.5;
    CHECK(max_abs(sym_inverse(m) - expected) < 1e-15);

    ComplexMatrix singular(2, 2);
    singular << 1.0, 2.0, 2.0, 4.0;
    CHECK_THROWS_WITH_CODE(sym_inverse(singular), ErrorCode::SingularMatrix);
  }

  TEST_CASE("principal square roots") {
    CHECK(std::abs(principal_sqrt(-1.0) - 1i) < 1e-15);
    CHECK(std::abs(principal_sqrt(-4.0 + 0.0i) - 2i) < 1e-15);
    // det diag(i, i) = -1
    ComplexMatrix m = ComplexMatrix::Identity(2, 2) * 1i;
    CHECK(std::abs(principal_sqrt_det(m) - 1i) < 1e-15);
    // the branch cut sits on the negative axis, with argument in (-pi/2, pi/2]
    SplitMix64 rng(11);
    for (int t = 0; t < 200; ++t) {
      const Complex z{rng.uniform(-3, 3), rng.uniform(-3, 3)};
      const Complex r = principal_sqrt(z);
      CHECK(std::abs(r * r - z) < 1e-14 * std::max(1.0, std::abs(z)));
      CHECK(r.real() >= 0.0);
    }
  }

  TEST_CASE("period matrix validation") {
    ComplexMatrix omega(2, 2);
    omega << -1i, 0.1, 0.1, 1i;
    const PeriodMatrix pm(omega);
    CHECK(pm.n() == 2);
    CHECK(pm.k() == 1);

    ComplexMatrix asym = omega;
    asym(0, 1) = 0.3;
    CHECK_THROWS_WITH_CODE(PeriodMatrix{asym}, ErrorCode::InvalidInput);

    ComplexMatrix flat(1, 1);
    flat << 0.5;
    CHECK_THROWS_WITH_CODE(PeriodMatrix{flat}, ErrorCode::DegenerateForm);
  }
}

TEST_SUITE("summation") {
  TEST_CASE("compensated sum recovers cancelled terms") {
    CompensatedSum s;
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
    CHECK(s.value().real() == 1.0);
  }

  TEST_CASE("ordered sum is identical for any thread count") {
    const std::size_t count = 5 * kShardSize + 17;
    auto term = [](std::size_t i) {
      const double x = static_cast<double>(i);
      return Complex{std::sin(x) * 1e3 / (1.0 + x), std::cos(0.5 * x) / (2.0 + x)};
    };
    const std::vector<const char*> settings = {"1", "2", "3", "8"};
    std::vector<Complex> results;
    for (const char* threads : settings) {
      ScopedEnv env("THETA_THREADS", threads);
      results.push_back(ordered_sum(count, term));
    }
    for (const auto& r : results) {
      CHECK(r.real() == results.front().real());
      CHECK(r.imag() == results.front().imag());
    }
    // and agrees with a plain loop to rounding
    Complex plain = 0.0;
    for (std::size_t i = 0; i < count; ++i) plain += term(i);
    CHECK(std::abs(plain - results.front()) < 1e-9);
  }

  TEST_CASE("thread count honours THETA_THREADS") {
    ScopedEnv env("THETA_THREADS", "3");
    CHECK(thread_count() == 3u);
  }
}

TEST_SUITE("random") {
  TEST_CASE("splitmix64 reference stream") {
    // First outputs for seed 0 of the published reference implementation.
    SplitMix64 rng(0);
    CHECK(rng() == 0xE220A8397B1DCDAFULL);
    CHECK(rng() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng() == 0x06C45D188009454FULL);
  }

  TEST_CASE("sample points are reproducible and bounded") {
    const auto a = sample_points(3, 5);
    const auto b = sample_points(3, 5, kDefaultSampleSeed);
    REQUIRE(a.size() == 5);
    for (std::size_t p = 0; p < a.size(); ++p) {
      CHECK(a[p] == b[p]);
      for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(a[p](i).real()) <= 0.5);
        CHECK(std::abs(a[p](i).imag()) <= 0.3);
      }
    }
    CHECK(sample_points(3, 5, 1)[0] != a[0]);
  }
}
