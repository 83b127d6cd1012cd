#include "qmc/oracle.hpp"

#include <algorithm>
#include <map>

namespace qmc {

OracleF build_F(const QMIntegrand& omega, const Section& s, int truncation) {
  validate_section(s, omega.pole);
  int d = omega.dimension();
  OracleF out;
  out.kappa = kappa(omega.pole);
  out.truncation = truncation < 0 ? out.kappa : truncation;
  out.o_s = order_factor(s, omega.pole);
  const auto& J = omega.pole.J;
  const auto& K = omega.pole.K;

  // Each surviving monomial contributes c (-2)^t/t! lambda^t (-2 pi i)^d
  // * orientation / prod_j (I_j lambda + s_j + 1); terms sharing a
  // denominator are summed before the function is formed.
  std::map<std::vector<LinearFactor>, LambdaPoly> grouped;
  ExactValue base(Gaussian(block_orientation_sign(d) * out.o_s), 0);
  base *= ExactValue(gaussian_pow(Gaussian(0, -2), d), d);

  ConjPolynomial power = omega.psi;
  for (int t = 0; t <= out.truncation; ++t) {
    if (t > 0) {
      if (omega.metric.is_zero()) break;
      power = power * omega.metric;
    }
    Rational weight = rational_pow(Rational(-2), t) / factorial(t);
    for (const auto& [mono, c] : power.terms()) {
      std::vector<LinearFactor> factors;
      Rational constant = 1;
      bool survives = true;
      for (size_t j = 0; j < static_cast<size_t>(d); ++j) {
        int sj = mono.z[j] - J[j];
        if (sj != mono.zbar[j] - K[j]) {
          survives = false;
          break;
        }
        if (s.I[j] == 0) {
          constant /= sj + 1;
        } else {
          // monic form of (I lambda + s + 1)
          constant /= s.I[j];
          factors.push_back({Rational(1), Rational(sj + 1) / s.I[j]});
        }
      }
      if (!survives) continue;
      std::sort(factors.begin(), factors.end());
      ExactValue coef = base * ExactValue(c * Gaussian(weight * constant));
      grouped[factors] += LambdaPoly::monomial(coef, t);
    }
  }
  for (auto& [factors, num] : grouped)
    if (!num.is_zero()) out.F += RationalFunctionLambda::term(std::move(num), factors);
  return out;
}

OracleLaurent laurent(const OracleF& f) {
  OracleLaurent out;
  LaurentWindow w = f.F.laurent_at_zero(f.validity_order());
  out.pole_order = w.pole_order();
  out.within_kappa = out.pole_order <= f.kappa;
  out.window = w.starting_at(std::min(-f.kappa, w.lowest_order()));
  return out;
}

bool PoleAudit::all_satisfied() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.bound_satisfied; });
}

std::optional<Rational> pole_bound(const PoleData& pole, const Section& s) {
  std::optional<Rational> bound;
  for (int j : pole.polar_support()) {
    Rational I(s.I.at(static_cast<size_t>(j)));
    Rational a = Rational(pole.J[static_cast<size_t>(j)] - 1) / I;
    Rational b = Rational(pole.K[static_cast<size_t>(j)] - 1) / I;
    Rational m = a < b ? a : b;
    if (!bound || m > *bound) bound = m;
  }
  return bound;
}

PoleAudit pole_audit(const RationalFunctionLambda& F, const PoleData& pole, const Section& s) {
  PoleAudit audit;
  audit.bound = pole_bound(pole, s);
  for (const auto& p : F.poles()) {
    bool ok = audit.bound && p.location <= *audit.bound;
    audit.entries.push_back({p.location, p.order, ok});
  }
  return audit;
}

}  // namespace qmc
