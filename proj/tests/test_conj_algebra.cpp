#include <doctest.h>

#include "qmc/conj_algebra.hpp"
#include "test_support.hpp"

using namespace qmc;

namespace {

ConjPolynomial mono(int d, MultiIndex a, MultiIndex b, Gaussian c = 1) {
  return ConjPolynomial::monomial(d, std::move(a), std::move(b), c);
}

int degree(const ConjForm& f) { return f.degree(); }

}  // namespace

TEST_CASE("partial derivatives") {
  auto p = mono(1, {2}, {1});
  CHECK(p.d_dz(0) == mono(1, {1}, {1}, 2));
  CHECK(p.d_dzbar(0) == mono(1, {2}, {0}));
  CHECK(ConjPolynomial::bump(1, 0, 1).d_dz(0) == mono(1, {0}, {1}, -1));
  CHECK(ConjPolynomial::bump(1, 0, 2) ==
        ConjPolynomial::constant(1, 1) + mono(1, {1}, {1}, -2) + mono(1, {2}, {2}));
}

TEST_CASE("restrict_zero") {
  auto p = ConjPolynomial::constant(2, 1) + mono(2, {1, 0}, {0, 0}) + mono(2, {0, 1}, {0, 1});
  CHECK(p.restrict_zero({0}) == ConjPolynomial::constant(2, 1) + mono(2, {0, 1}, {0, 1}));
  CHECK(mono(2, {1, 0}, {0, 1}).restrict_zero({0}).is_zero());
  CHECK(p.restrict_zero({}) == p);
}

TEST_CASE("bump order") {
  auto b = ConjPolynomial::bump(2, 0, 3) * ConjPolynomial::bump(2, 1, 1) * mono(2, {1, 0}, {0, 2}, {2, 1});
  CHECK(b.bump_order(0) == 3);
  CHECK(b.bump_order(1) == 1);
  CHECK(mono(1, {1}, {0}).bump_order(0) == 0);
}

TEST_CASE("wedge examples") {
  ConjForm a = wedge(ConjForm::dz(1, 0), ConjForm::dzbar(1, 0));
  CHECK(a.top_coefficient({0}) == ConjPolynomial::constant(1, 1));
  CHECK(wedge(ConjForm::dz(1, 0), ConjForm::dz(1, 0)).is_zero());

  ConjForm block = wedge(wedge(ConjForm::dz(2, 0), ConjForm::dz(2, 1)), wedge(ConjForm::dzbar(2, 0), ConjForm::dzbar(2, 1)));
  ConjForm paired = wedge(wedge(ConjForm::dz(2, 0), ConjForm::dzbar(2, 0)), wedge(ConjForm::dz(2, 1), ConjForm::dzbar(2, 1)));
  CHECK(block == -paired);
  CHECK(block_orientation_sign(1) == 1);
  CHECK(block_orientation_sign(2) == -1);
  CHECK(block_orientation_sign(3) == -1);
  CHECK(block_orientation_sign(4) == 1);
}

TEST_CASE("property: block orientation sign by transposition counting") {
  for (int n = 1; n <= 5; ++n) {
    ConjForm block = ConjForm::function(ConjPolynomial::constant(n, 1));
    for (int j = 0; j < n; ++j) block = wedge(block, ConjForm::dz(n, j));
    for (int j = 0; j < n; ++j) block = wedge(block, ConjForm::dzbar(n, j));
    ConjForm paired = ConjForm::function(ConjPolynomial::constant(n, 1));
    for (int j = 0; j < n; ++j) paired = wedge(paired, wedge(ConjForm::dz(n, j), ConjForm::dzbar(n, j)));
    // moving dzbar_j left past dz_{j+1}..dz_n takes n - 1 - j swaps
    int swaps = 0;
    for (int j = 0; j < n; ++j) swaps += n - 1 - j;
    CHECK(block == (swaps % 2 ? -paired : paired));
    CHECK((swaps % 2 ? -1 : 1) == block_orientation_sign(n));
  }
}

TEST_CASE("dbar, del and conj examples") {
  CHECK(ConjForm::function(ConjPolynomial::zbar(1, 0)).dbar() == ConjForm::dzbar(1, 0));
  CHECK(ConjForm::function(mono(1, {1}, {1})).del() == ConjForm::dz(1, 0).times(ConjPolynomial::zbar(1, 0)));
  ConjForm f = ConjForm::dz(1, 0).times(mono(1, {1}, {0}, Gaussian(0, 1)));
  CHECK(f.conj() == ConjForm::dzbar(1, 0).times(mono(1, {0}, {1}, Gaussian(0, -1))));
  ConjForm top = wedge(ConjForm::dz(2, 0), ConjForm::dz(2, 1)).times(ConjPolynomial::z(2, 1));
  CHECK(top.conj().bidegree() == std::make_pair(0, 2));
  CHECK(top.conj().conj() == top);
}

TEST_CASE("property: d-bar and d square to zero and anticommute") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    std::mt19937_64 rng(seed);
    int d = test_support::uniform(rng, 1, 3);
    int p = test_support::uniform(rng, 0, d), q = test_support::uniform(rng, 0, d);
    ConjForm w = test_support::random_form(rng, d, p, q, 4);
    CHECK(w.dbar().dbar().is_zero());
    CHECK(w.del().del().is_zero());
    CHECK(w.del().dbar() == -w.dbar().del());
    CHECK(w.conj().conj() == w);
    CHECK(w.dbar().conj() == w.conj().del());
  }
}

TEST_CASE("property: Leibniz rule") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    std::mt19937_64 rng(seed);
    int d = test_support::uniform(rng, 1, 3);
    auto P = test_support::random_polynomial(rng, d, 4), Q = test_support::random_polynomial(rng, d, 4);
    int j = test_support::uniform(rng, 0, d - 1);
    CHECK((P * Q).d_dz(j) == P.d_dz(j) * Q + P * Q.d_dz(j));
    CHECK((P * Q).d_dzbar(j) == P.d_dzbar(j) * Q + P * Q.d_dzbar(j));
    ConjForm a = test_support::random_form(rng, d, test_support::uniform(rng, 0, d), 0, 3);
    ConjForm b = test_support::random_form(rng, d, 0, test_support::uniform(rng, 0, d), 3);
    ConjForm lhs = wedge(a, b).dbar();
    ConjForm rhs = wedge(a.dbar(), b) + (degree(a) % 2 ? -wedge(a, b.dbar()) : wedge(a, b.dbar()));
    if (!a.is_zero() && !b.is_zero()) CHECK(lhs == rhs);
  }
}

TEST_CASE("property: wedge is graded commutative and associative") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    std::mt19937_64 rng(seed);
    int d = test_support::uniform(rng, 1, 3);
    auto pick = [&] { return test_support::uniform(rng, 0, d); };
    ConjForm a = test_support::random_form(rng, d, pick(), pick(), 2);
    ConjForm b = test_support::random_form(rng, d, pick(), pick(), 2);
    ConjForm c = test_support::random_form(rng, d, pick(), pick(), 2);
    if (a.is_zero() || b.is_zero()) continue;
    ConjForm ab = wedge(a, b), ba = wedge(b, a);
    CHECK(ab == ((degree(a) * degree(b)) % 2 ? -ba : ba));
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
  }
}

TEST_CASE("property: restriction commutes with derivatives in surviving variables") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    std::mt19937_64 rng(seed);
    int d = test_support::uniform(rng, 2, 3);
    auto P = test_support::random_polynomial(rng, d, 4, 6);
    int frozen = test_support::uniform(rng, 0, d - 1);
    int j = (frozen + 1) % d;
    CHECK(P.d_dz(j).restrict_zero({frozen}) == P.restrict_zero({frozen}).d_dz(j));
    CHECK(P.d_dzbar(j).restrict_zero({frozen}) == P.restrict_zero({frozen}).d_dzbar(j));
  }
}

TEST_CASE("real-valued polynomials") {
  auto phi = mono(2, {1, 0}, {0, 1}, {1, 2}) + mono(2, {0, 1}, {1, 0}, {1, -2});
  CHECK(phi.is_real_valued());
  CHECK_FALSE(ConjPolynomial::z(2, 0).is_real_valued());
  CHECK((phi * ConjPolynomial::z(2, 0)).conj() == phi * ConjPolynomial::zbar(2, 0));
}
