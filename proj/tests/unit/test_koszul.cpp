#include <doctest.h>

#include <theta/koszul.hpp>
#include <theta/lattice.hpp>

#include "test_util.hpp"

using namespace theta;

namespace {

using GR = GroupRingElement;

GR x(int dim, int j, std::int64_t e = 1) { return GR::generator_power(dim, j, e); }

// Brute-force check of one chain-map square on a single generator, written
// without verify_chain_map: d uses the columns of S, d' the coordinates.
bool square_commutes(const IntMatrix& S, const std::vector<int>& subset) {
  const int dim = static_cast<int>(S.rows());
  const KoszulChain gen = KoszulChain::generator(dim, subset);
  return s_star(S, koszul_d(gen, S)) == koszul_d(s_star(S, gen));
}

}  // namespace

TEST_SUITE("koszul") {
  TEST_CASE("group ring products") {
    const int dim = 4;
    const GR one = GR::one(dim);
    CHECK(one * x(dim, 0) == x(dim, 0));
    CHECK((x(dim, 0) - one) * (x(dim, 0) + one) == x(dim, 0, 2) - one);
    CHECK((x(dim, 0) - one) * (x(dim, 1) - one) == x(dim, 0) * x(dim, 1) - x(dim, 0) - x(dim, 1) + one);
    CHECK(gr_multiply(x(dim, 2), x(dim, 2, -1)) == one);
    CHECK((x(dim, 3) - x(dim, 3)).is_zero());
    CHECK((x(dim, 0, 3) - GR::monomial({0, 0, 0, 0}, 2)).augmentation() == -1);
  }

  TEST_CASE("coefficients are arbitrary precision") {
    const int dim = 2;
    GR p = x(dim, 0) + GR::one(dim);
    GR acc = GR::one(dim);
    for (int i = 0; i < 70; ++i) acc = acc * p;
    // binomial(70, 35) does not fit in 64 bits
    CHECK(acc.coefficient({35, 0}) == BigInt("112186277816662845432"));
  }

  TEST_CASE("geometric sums") {
    const int dim = 2;
    CHECK(GR::geom(dim, 0, 3) == x(dim, 0, 2) + x(dim, 0) + GR::one(dim));
    CHECK(GR::geom(dim, 0, 0).is_zero());
    CHECK(GR::geom(dim, 0, -2) == -(x(dim, 0, -2) + x(dim, 0, -1)));
    for (int e = -5; e <= 5; ++e) CHECK(GR::geom(dim, 1, e) * (x(dim, 1) - GR::one(dim)) == x(dim, 1, e) - GR::one(dim));
  }

  TEST_CASE("differential") {
    const int dim = 4;
    const GR one = GR::one(dim);
    KoszulChain d1 = koszul_d(KoszulChain::generator(dim, {2}));
    CHECK(d1.degree() == 0);
    CHECK(d1.component({}) == x(dim, 2) - one);

    KoszulChain expected(dim, 1);
    expected.add({1}, x(dim, 0) - one);
    expected.add({0}, -(x(dim, 1) - one));
    CHECK(koszul_d(KoszulChain::generator(dim, {0, 1})) == expected);
    CHECK(koszul_d(koszul_d(KoszulChain::generator(dim, {0, 1}))).is_zero());
  }

  TEST_CASE("tuple normalization") {
    const int dim = 4;
    // w_2 w_1 = -w_1 w_2
    CHECK(KoszulChain::generator(dim, {1, 0}).component({0, 1}) == -GR::one(dim));
    KoszulChain c(dim, 2);
    c.add({3, 3}, GR::one(dim));
    CHECK(c.is_zero());
  }

  TEST_CASE("d squared and augmentation on random chains") {
    SplitMix64 rng(99);
    for (int n = 1; n <= 3; ++n) {
      const int dim = 2 * n;
      for (int t = 0; t < 20; ++t) {
        const int degree = 1 + t % std::min(3, dim);
        const KoszulChain c = random_chain(dim, degree, 4, 3, 2, rng);
        const KoszulChain dc = koszul_d(c);
        CHECK(koszul_d(dc).is_zero());
        if (degree == 1) CHECK(dc.component({}).augmentation() == 0);
      }
    }
  }

  TEST_CASE("telescoping") {
    const int dim = 6;
    // x'_1^3 x'_2^2 x'_3^4 x'_6, peeled left to right
    const Exponent e = {3, 2, 4, 0, 0, 1};
    const auto r = telescope_decompose(e);
    REQUIRE(r.size() == 6);
    CHECK(r[0] == GR::geom(dim, 0, 3));
    CHECK(r[0] == x(dim, 0, 2) + x(dim, 0) + GR::one(dim));
    CHECK(r[1] == x(dim, 0, 3) * (x(dim, 1) + GR::one(dim)));
    CHECK(r[2] == x(dim, 0, 3) * x(dim, 1, 2) * (x(dim, 2, 3) + x(dim, 2, 2) + x(dim, 2) + GR::one(dim)));
    CHECK(r[3].is_zero());
    CHECK(r[4].is_zero());
    CHECK(r[5] == x(dim, 0, 3) * x(dim, 1, 2) * x(dim, 2, 4));
    CHECK(telescope_reconstruct(r) == GR::monomial(e));

    CHECK(telescope_decompose({1, 0})[0] == GR::one(2));
    CHECK(telescope_decompose({-1, 0})[0] == -x(2, 0, -1));

    SplitMix64 rng(7);
    for (int t = 0; t < 200; ++t) {
      Exponent v(4);
      for (auto& c : v) c = rng.integer(-4, 4);
      CHECK(telescope_reconstruct(telescope_decompose(v)) == GR::monomial(v));
      CHECK(telescope_reconstruct(telescope_decompose(v, {2, 0, 3, 1})) == GR::monomial(v));
    }
  }

  TEST_CASE("identity chain map") {
    for (int n = 1; n <= 2; ++n) {
      const IntMatrix I = IntMatrix::Identity(2 * n, 2 * n);
      const KoszulChain c = KoszulChain::generator(2 * n, {0, 2 * n - 1});
      CHECK(s_star(I, c) == c);
      CHECK(verify_chain_map(I, 2));
    }
    CHECK_THROWS_WITH_CODE(s_star((IntMatrix(2, 2) << 1, 1, 1, 2).finished() * 2, KoszulChain::generator(2, {0})),
                           ErrorCode::NotSymplectic);
  }

  TEST_CASE("type three swaps v into u") {
    const int dim = 4;
    CHECK(s_star(type_iii_matrix(2), KoszulChain::generator(dim, {2, 3})) == KoszulChain::generator(dim, {0, 1}));
    CHECK(s_star(type_iii_matrix(2), KoszulChain::generator(dim, {2})) == KoszulChain::generator(dim, {0}));
  }

  TEST_CASE("type Ic image has two components") {
    const int dim = 4;
    const KoszulChain image = s_star(type_ic_matrix(2, 1), KoszulChain::generator(dim, {1}));
    CHECK(image.components().size() == 2);
    CHECK(image.component({0}) == GR::one(dim));
    CHECK(image.component({1}) == x(dim, 0));
  }

  TEST_CASE("type Ia and Ib top coefficients") {
    SplitMix64 rng(12);
    for (int t = 0; t < 5; ++t) {
      const IntMatrix S = type_ia_matrix(3, 2, rng);
      CHECK(is_symplectic(S));
      CHECK(s_star(S, KoszulChain::generator(6, {0, 1})).component({0, 1}) == GR::one(6));
    }
    const std::vector<int> desc = {3, 2, 1, 0};
    CHECK(s_star(type_ib_matrix(2, 2), KoszulChain::generator(4, {0, 1}), desc).component({0, 1}) == GR::one(4));
  }

  TEST_CASE("chain map on translations and random words") {
    IntMatrix b(2, 2);
    b << 2, 1, 1, 0;
    const IntMatrix S = type_ii_matrix(b);
    CHECK(is_symplectic(S));
    CHECK(verify_chain_map(S, 2));
    // conjugated by a split basis change
    const IntMatrix nm = type_i_matrix((IntMatrix(2, 2) << 1, 1, 0, 1).finished());
    const IntMatrix conj = nm * S * symplectic_inverse(nm);
    CHECK(verify_chain_map(conj, 2));

    SplitMix64 rng(2024);
    for (int t = 0; t < 50; ++t) {
      const IntMatrix W = random_type_word(2, 1, static_cast<int>(rng.integer(1, 3)), rng);
      CHECK(is_symplectic(W));
      CHECK(verify_chain_map(W, 2));
      CHECK(square_commutes(W, {0, 3}));
      CHECK(square_commutes(W, {1}));
    }
  }
}
