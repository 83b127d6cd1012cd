#include <doctest.h>

#include "numeric_oracle.hpp"
#include "qmc/fuzz.hpp"
#include "qmc/oracle.hpp"
#include "test_support.hpp"

using namespace qmc;
using numeric_oracle::cplx;
using test_support::pi_i;

namespace {

RationalFunctionLambda simple(const Gaussian& c, const Rational& root) {
  return RationalFunctionLambda::term(LambdaPoly(ExactValue(c)), {LinearFactor{1, -root}});
}

QMIntegrand integrand(MultiIndex J, MultiIndex K, ConjPolynomial psi) {
  return QMIntegrand::from_psi({std::move(J), std::move(K)}, std::move(psi));
}

}  // namespace

TEST_CASE("closed-form F for the worked instance") {
  OracleF f = build_F(integrand({1}, {1}, ConjPolynomial::bump(1, 0, 2)), {{1}});
  RationalFunctionLambda expected = (simple(1, 0) + simple(-2, -1) + simple(1, -2)) * pi_i(-2);
  CHECK((f.F - expected).is_zero());
  CHECK(f.kappa == 1);
  CHECK(f.validity_order() == 0);
  OracleLaurent l = laurent(f);
  CHECK(l.window.coefficient(-1) == pi_i(-2));
  CHECK(l.window.coefficient(0) == pi_i(3));
  CHECK(l.pole_order == 1);
  CHECK(l.within_kappa);

  OracleLaurent longer = laurent(build_F(integrand({1}, {1}, ConjPolynomial::bump(1, 0, 2)), {{1}}, 3));
  CHECK(longer.window.validity_order() == 2);
}

TEST_CASE("oracle F without poles and with angular cancellation") {
  OracleF f = build_F(integrand({0}, {0}, ConjPolynomial::bump(1, 0, 1)), {{0}});
  CHECK(f.F.evaluate(0) == pi_i(-1));
  CHECK(f.F.evaluate(7) == pi_i(-1));
  using namespace numeric_oracle;
  auto num = polydisc_integral(1, [](const std::vector<cplx>& z) { return cplx(1 - std::norm(z[0])); });
  CHECK(close(num, value(pi_i(-1))));

  // every monomial has a - J != b - K
  ConjPolynomial off = ConjPolynomial::monomial(1, {2}, {0}, 1) * ConjPolynomial::bump(1, 0, 3);
  OracleF zero = build_F(integrand({1}, {1}, off), {{1}});
  CHECK(zero.F.is_zero());
  OracleLaurent l = laurent(zero);
  CHECK(l.window.coefficient(-1).is_zero());
  CHECK(l.window.coefficient(0).is_zero());
}

TEST_CASE("oracle F against quadrature with a section of order 2") {
  // d = 1, I = 2, J = K = 1: F = int |z|^{4 lambda} psi / |z|^2, o(s) = 2
  ConjPolynomial psi = ConjPolynomial::bump(1, 0, 2) * (ConjPolynomial::constant(1, 1) + ConjPolynomial::monomial(1, {1}, {1}, {0, 3}));
  OracleF f = build_F(integrand({1}, {1}, psi), {{2}}, 6);
  CHECK(f.o_s == 2);
  using namespace numeric_oracle;
  for (int k : {1, 2, 3}) {
    Rational lam(k, 2);
    auto num = polydisc_integral(1, [&](const std::vector<cplx>& z) {
      double u = std::norm(z[0]);
      return std::pow(u, 2 * lam.get_d() - 1) * evaluate(psi, z);
    });
    CHECK(close(2.0 * num, value(f.F.evaluate(lam))));
  }
}

TEST_CASE("semi-meromorphic instances have no pole at the origin") {
  ConjPolynomial psi = ConjPolynomial::bump(2, 0, 3) * ConjPolynomial::bump(2, 1, 2) *
                       (ConjPolynomial::constant(2, 1) + ConjPolynomial::monomial(2, {2, 0}, {0, 1}, 2));
  OracleLaurent l = laurent(build_F(QMIntegrand::from_psi({{2, 0}, {0, 1}}, psi), {{1, 2}}));
  CHECK(l.window.lowest_order() == 0);
  CHECK(l.pole_order == 0);
}

TEST_CASE("pole audit bounds") {
  PoleData p1{{3}, {1}};
  CHECK(pole_bound(p1, {{1}}) == Rational(0));
  OracleF f1 = build_F(QMIntegrand::from_psi(p1, ConjPolynomial::bump(1, 0, 4) * ConjPolynomial::monomial(1, {2}, {0}, 1)), {{1}});
  PoleAudit a1 = pole_audit(f1.F, p1, {{1}});
  CHECK(a1.all_satisfied());
  for (const auto& e : a1.entries) CHECK(e.location <= 0);

  PoleData p2{{1}, {1}};
  PoleAudit a2 = pole_audit(build_F(QMIntegrand::from_psi(p2, ConjPolynomial::bump(1, 0, 2)), {{1}}).F, p2, {{1}});
  REQUIRE(a2.entries.size() == 3);
  for (const auto& e : a2.entries) CHECK(e.location.get_den() == 1);

  PoleData p3{{3}, {3}};
  CHECK(pole_bound(p3, {{2}}) == Rational(1));
  ConjPolynomial psi3 = ConjPolynomial::bump(1, 0, 6) * ConjPolynomial::monomial(1, {1}, {1}, 1);
  PoleAudit a3 = pole_audit(build_F(QMIntegrand::from_psi(p3, psi3), {{2}}).F, p3, {{2}});
  CHECK(a3.all_satisfied());
  bool half = false;
  for (const auto& e : a3.entries) half = half || e.location == Rational(1, 2);
  CHECK(half);

  CHECK_FALSE(pole_bound(PoleData::none(2), {{0, 0}}).has_value());
}

TEST_CASE("property: pole order at the origin and the pole bound") {
  FuzzConfig cfg{3, 3, 3, 0, 0, 1};
  for (std::uint64_t i = 0; i < 80; ++i) {
    auto rng = instance_rng(5, i);
    Instance inst = assemble(random_problem(rng, cfg, {false, false, std::nullopt, std::nullopt}));
    OracleF f = build_F(inst.omega, inst.section);
    OracleLaurent l = laurent(f);
    CHECK(l.within_kappa);
    CHECK(l.pole_order <= kappa(inst.omega.pole));
    CHECK(pole_audit(f.F, inst.omega.pole, inst.section).all_satisfied());
  }
}

TEST_CASE("property: conjugating psi and swapping the poles conjugates F") {
  FuzzConfig cfg{3, 3, 3, 0, 0, 1};
  for (std::uint64_t i = 0; i < 60; ++i) {
    auto rng = instance_rng(9, i);
    Instance inst = assemble(random_problem(rng, cfg));
    QMIntegrand w = inst.omega;
    QMIntegrand wc = QMIntegrand::from_psi({w.pole.K, w.pole.J}, w.psi.conj(), w.metric);
    RationalFunctionLambda expected = build_F(w, inst.section).F.conj();
    // conj(dz^dzbar) = (-1)^d dz^dzbar in block order
    if (w.dimension() % 2) expected *= ExactValue(-1);
    CHECK((build_F(wc, inst.section).F - expected).is_zero());
  }
}
