#include "qmc/continuation.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "qmc/moments.hpp"

namespace qmc {

namespace {

void check_lemma_hypothesis(const MultiIndex& I, const MultiIndex& J, const MultiIndex& K) {
  if (I.size() != J.size() || I.size() != K.size())
    throw std::invalid_argument("I, J, K lengths differ");
  for (size_t j = 0; j < I.size(); ++j) {
    if (I[j] < 0 || J[j] < 0 || K[j] < 0) throw std::invalid_argument("negative multi-index entry");
    if (I[j] == 0 && J[j] + K[j] > 0)
      throw std::invalid_argument("I_" + std::to_string(j + 1) + " = 0 but z_" + std::to_string(j + 1) +
                                  " is polar");
  }
}

int total(const MultiIndex& v) { return std::accumulate(v.begin(), v.end(), 0); }

/// psi phi^t differentiated by d^{J+K}, diagonal part only, for t = 0..tmax.
std::vector<ConjPolynomial> differentiated_powers(const QMIntegrand& omega, int tmax) {
  std::vector<ConjPolynomial> out;
  ConjPolynomial cur = omega.psi;
  for (int t = 0; t <= tmax; ++t) {
    if (t > 0) {
      if (omega.metric.is_zero()) {
        out.emplace_back(omega.dimension());
        continue;
      }
      cur = cur * omega.metric;
    }
    out.push_back(cur.derivative(omega.pole.J, omega.pole.K).diagonal_part());
  }
  return out;
}

/// int (sum_j I_j log|z_j|^2)^l * D for a diagonal polynomial D.
ExactValue log_power_integral(const LogPolynomial& log_power, const ConjPolynomial& diag) {
  if (diag.is_zero() || log_power.is_zero()) return {};
  return integrate_logpoly(log_power * diag);
}

std::vector<ExactValue> g_derivatives(const QMIntegrand& omega, const MultiIndex& I, int kmax) {
  auto D = differentiated_powers(omega, kmax);
  LogPolynomial L = LogPolynomial::log_sum(I);
  std::vector<LogPolynomial> Lpow;
  Lpow.push_back(L.pow(0));
  for (int l = 1; l <= kmax; ++l) Lpow.push_back(Lpow.back() * L);

  std::map<std::pair<int, int>, ExactValue> cache;
  std::vector<ExactValue> g;
  for (int k = 0; k <= kmax; ++k) {
    ExactValue v;
    for (int l = 0; l <= k; ++l) {
      int t = k - l;
      if (D[static_cast<size_t>(t)].is_zero()) continue;
      auto key = std::make_pair(l, t);
      auto it = cache.find(key);
      if (it == cache.end())
        it = cache.emplace(key, log_power_integral(Lpow[static_cast<size_t>(l)], D[static_cast<size_t>(t)])).first;
      Rational c = binomial(k, l) * rational_pow(Rational(-2), t);
      v += it->second * ExactValue(Gaussian(c));
    }
    g.push_back(std::move(v));
  }
  return g;
}

}  // namespace

HFactor h_factor(const MultiIndex& I, const MultiIndex& J, const MultiIndex& K) {
  check_lemma_hypothesis(I, J, K);
  Rational scale = 1;
  std::vector<LinearFactor> factors;
  auto add_block = [&](int Ij, int order) {
    if (order == 0) return;
    scale *= Ij;
    for (int t = 1; t < order; ++t) factors.push_back({Rational(Ij), Rational(-t)});
  };
  for (size_t j = 0; j < I.size(); ++j) {
    add_block(I[j], J[j]);
    add_block(I[j], K[j]);
  }
  HFactor out;
  out.h = RationalFunctionLambda::term(LambdaPoly(ExactValue(Gaussian(1 / scale))), std::move(factors));
  out.p = p_of(PoleData{J, K});
  out.poles = out.h.poles();
  return out;
}

bool verify_lemma_multi(const MultiIndex& I, const MultiIndex& J, const MultiIndex& K) {
  HFactor hf = h_factor(I, J, K);
  // d/dz_j on c(lambda) z^a zbar^b |z^I|^{2 lambda} multiplies c by
  // (a_j + lambda I_j) and lowers a_j; dbar acts the same way on b.
  // c is recorded as its list of linear factors.
  std::vector<std::pair<int, int>> c;
  MultiIndex a(I.size()), b(I.size());
  for (size_t j = 0; j < I.size(); ++j) {
    for (int step = 0; step < J[j]; ++step) c.emplace_back(a[j]--, I[j]);
    for (int step = 0; step < K[j]; ++step) c.emplace_back(b[j]--, I[j]);
  }
  for (size_t j = 0; j < I.size(); ++j)
    if (a[j] != -J[j] || b[j] != -K[j]) return false;
  // right side symbol h(lambda) c(lambda) / lambda^p against 1.  Both sides
  // share a denominator of degree |J|+|K| with roots >= 0, so agreement at
  // |J|+|K|+1 negative points is equality.
  const ExactValue one(Gaussian(1));
  for (int t = 1; t <= static_cast<int>(c.size()) + 1; ++t) {
    Rational x(-t);
    Rational cx = rational_pow(1 / x, hf.p);
    for (const auto& [shift, slope] : c) cx *= shift + x * slope;
    if (!(hf.h.evaluate(x) * ExactValue(Gaussian(cx)) == one)) return false;
  }
  return true;
}

ExactValue g_derivative(const QMIntegrand& omega, const MultiIndex& I, int k) {
  if (k < 0) throw std::invalid_argument("negative derivative order");
  check_lemma_hypothesis(I, omega.pole.J, omega.pole.K);
  return g_derivatives(omega, I, k).back();
}

std::vector<ExactValue> g_derivative_table(const QMIntegrand& omega, const MultiIndex& I, int kmax) {
  if (kmax < 0) return {};
  check_lemma_hypothesis(I, omega.pole.J, omega.pole.K);
  return g_derivatives(omega, I, kmax);
}

ExactValue g_derivative_multinomial(const QMIntegrand& omega, const MultiIndex& I, int k) {
  if (k < 0) throw std::invalid_argument("negative derivative order");
  check_lemma_hypothesis(I, omega.pole.J, omega.pole.K);
  int d = omega.dimension();
  auto D = differentiated_powers(omega, k);
  ExactValue total_value;
  for (int l = 0; l <= k; ++l) {
    const ConjPolynomial& diag = D[static_cast<size_t>(k - l)];
    if (diag.is_zero()) continue;
    Rational outer = binomial(k, l) * rational_pow(Rational(-2), k - l);
    MultiIndex M(static_cast<size_t>(d));
    std::function<void(int, int)> visit = [&](int j, int left) {
      if (j == d - 1) {
        M[static_cast<size_t>(j)] = left;
        Rational c = factorial(l);
        for (int i = 0; i < d; ++i) {
          int Mi = M[static_cast<size_t>(i)];
          c /= factorial(Mi);
          c *= rational_pow(Rational(I[static_cast<size_t>(i)]), Mi);
        }
        if (sgn(c) == 0) return;
        LogPolynomial term = LogPolynomial::log_monomial(d, M, Gaussian(c * outer));
        total_value += integrate_logpoly(term * diag);
        return;
      }
      for (int m = 0; m <= left; ++m) {
        M[static_cast<size_t>(j)] = m;
        visit(j + 1, left - m);
      }
    };
    visit(0, l);
  }
  return total_value;
}

CoefficientReport laurent_coeffs(const QMIntegrand& omega, const Section& s) {
  validate_section(s, omega.pole);
  const auto& J = omega.pole.J;
  const auto& K = omega.pole.K;
  HFactor hf = h_factor(s.I, J, K);
  int p = hf.p;
  int kap = kappa(omega.pole);
  LaurentWindow hw = hf.h.laurent_at_zero(p);
  auto g = g_derivatives(omega, s.I, p);
  Rational sign = ((total(J) + total(K)) % 2) ? -1 : 1;

  std::vector<ExactValue> coeffs;
  for (int r = kap; r >= 0; --r) {
    ExactValue c;
    for (int k = 0; k <= p - r; ++k) {
      if (g[static_cast<size_t>(k)].is_zero()) continue;
      c += hw.coefficient(p - r - k) * g[static_cast<size_t>(k)] / Gaussian(factorial(k));
    }
    coeffs.push_back(c * ExactValue(Gaussian(sign)));
  }
  CoefficientReport rep;
  rep.window = LaurentWindow(-kap, std::move(coeffs));
  rep.kappa = kap;
  rep.p = p;
  rep.o_s = order_factor(s, omega.pole);
  rep.pathway = "continuation";
  return rep;
}

ExactValue canonical_value(const ConjPolynomial& psi, const PoleData& pole, const VarSet& frozen) {
  int d = pole.dimension();
  Rational denom = 1;
  MultiIndex logs(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    int Jj = pole.J[static_cast<size_t>(j)], Kj = pole.K[static_cast<size_t>(j)];
    if (Jj > 0) denom *= factorial(Jj - 1);
    if (Kj > 0) denom *= factorial(Kj - 1);
    if (Jj + Kj > 0) {
      if (frozen.count(j)) throw std::invalid_argument("pole on a frozen variable");
      logs[static_cast<size_t>(j)] = 1;
    }
  }
  int p = p_of(pole);
  ConjPolynomial diag = psi.derivative(pole.J, pole.K).diagonal_part();
  ExactValue v = integrate_logpoly(LogPolynomial::log_monomial(d, logs, 1) * diag, frozen);
  Rational c = (p % 2 ? Rational(-1) : Rational(1)) / denom;
  return v * ExactValue(Gaussian(c));
}

ExactValue canonical_current(const QMIntegrand& omega) { return canonical_value(omega.psi, omega.pole); }

ExactValue principal_value(const QMIntegrand& omega, const Section& s) {
  if (kappa(omega.pole) > 0)
    throw std::invalid_argument("principal value requires a semi-meromorphic pole (kappa = 0)");
  CoefficientReport rep = laurent_coeffs(omega, s);
  return rep.coefficient(0);
}

ConjPolynomial top_coefficient(const ConjForm& form) {
  int d = form.dimension();
  VarSet all;
  for (int j = 0; j < d; ++j) all.insert(j);
  return form.top_coefficient(all);
}

ConjForm top_form(const ConjPolynomial& psi) {
  int d = psi.dimension();
  std::vector<int> all(static_cast<size_t>(d));
  std::iota(all.begin(), all.end(), 0);
  return ConjForm::basis(d, all, all, psi);
}

ExactValue principal_value(const PolarForm& form) {
  int d = form.numerator.dimension();
  auto bd = form.numerator.bidegree();
  if (!form.numerator.is_zero() && (!bd || bd->first != d || bd->second != d))
    throw std::invalid_argument("principal value of a non-top-degree form");
  PoleData pole = PoleData::none(d);
  pole.J.at(static_cast<size_t>(form.variable)) = form.order;
  Section s{MultiIndex(static_cast<size_t>(d))};
  if (form.order > 0) s.I[static_cast<size_t>(form.variable)] = 1;
  ConjPolynomial psi = form.numerator.is_zero() ? ConjPolynomial(d) : top_coefficient(form.numerator);
  return principal_value(QMIntegrand::from_psi(pole, psi), s);
}

ExactValue pairing_dbar_pv(const PolarForm& alpha, const ConjForm& xi) {
  int d = alpha.numerator.dimension();
  auto ad = alpha.numerator.bidegree();
  auto xd = xi.bidegree();
  if (!ad) throw std::invalid_argument("alpha must be homogeneous and nonzero");
  if (xi.is_zero()) return {};
  if (!xd || xd->first != d - ad->first || xd->second != d - ad->second - 1)
    throw std::invalid_argument("degree mismatch between alpha and xi");
  PolarForm integrand{wedge(alpha.numerator, xi.dbar()), alpha.variable, alpha.order};
  ExactValue pv = principal_value(integrand);
  return (ad->first + ad->second + 1) % 2 ? -pv : pv;
}

RationalFunctionLambda continued_F(const QMIntegrand& omega, const Section& s, int N) {
  if (N < 0) throw std::invalid_argument("negative shift");
  if (!omega.metric.is_zero()) throw std::invalid_argument("shifted representation requires phi = 0");
  validate_section(s, omega.pole);
  int d = omega.dimension();
  MultiIndex J = omega.pole.J, K = omega.pole.K;
  for (int j = 0; j < d; ++j) {
    auto u = static_cast<size_t>(j);
    J[u] += N * s.I[u];
    K[u] += N * s.I[u];
    if (omega.psi.bump_order(j, J[u] + K[u] + 1) < J[u] + K[u] + 1)
      throw std::invalid_argument("bump order too small for the shift N = " + std::to_string(N));
  }
  HFactor hf = h_factor(s.I, J, K);
  Rational shift(N);
  RationalFunctionLambda prefactor = hf.h.shifted(shift);
  prefactor *= RationalFunctionLambda::term(
      LambdaPoly(ExactValue(Gaussian(1))),
      std::vector<LinearFactor>(static_cast<size_t>(hf.p), LinearFactor{1, shift}));
  Rational sign = ((total(J) + total(K)) % 2) ? -1 : 1;
  sign *= order_factor(s, omega.pole);
  sign *= block_orientation_sign(d);

  ConjPolynomial diag = omega.psi.derivative(J, K).diagonal_part();
  RationalFunctionLambda integral;
  for (const auto& [mono, c] : diag.terms()) {
    RationalFunctionLambda t{ExactValue(c)};
    for (int j = 0; j < d; ++j) {
      auto u = static_cast<size_t>(j);
      t = t * lambda_moment(s.I[u], mono.z[u] + N * s.I[u]);
    }
    integral += t;
  }
  return (prefactor * integral.normalized()) * ExactValue(Gaussian(sign));
}

}  // namespace qmc
