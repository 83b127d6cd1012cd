#pragma once

// Derivative-based continuation of lambda -> int |s|^{2 lambda} psi/(z^J zbar^K).
//
// |z^I|^{2 lambda} / (z^J zbar^K) = h(lambda)/lambda^p * d^{J+K}|z^I|^{2 lambda},
// so after integrating by parts the integral is
// (-1)^{|J|+|K|} h(lambda) g(lambda) / lambda^p with
// g(lambda) = int |z^I|^{2 lambda} d^{J+K}(psi e^{-2 lambda phi}).

#include <string>
#include <vector>

#include "qmc/exact.hpp"
#include "qmc/pole_model.hpp"

namespace qmc {

struct HFactor {
  RationalFunctionLambda h;
  int p = 0;
  std::vector<PoleInfo> poles;
};

/// Throws std::invalid_argument if I_j = 0 while J_j + K_j > 0.
HFactor h_factor(const MultiIndex& I, const MultiIndex& J, const MultiIndex& K);

/// Checks the identity above on formal symbols c(lambda) z^a zbar^b |z^I|^{2 lambda}.
bool verify_lemma_multi(const MultiIndex& I, const MultiIndex& J, const MultiIndex& K);

/// g^{(k)}(0) = sum_l C(k,l) (-2)^{k-l} int (sum_j I_j log|z_j|^2)^l d^{J+K}(psi phi^{k-l}).
ExactValue g_derivative(const QMIntegrand& omega, const MultiIndex& I, int k);
/// g^{(k)}(0) for k = 0..kmax.
std::vector<ExactValue> g_derivative_table(const QMIntegrand& omega, const MultiIndex& I, int kmax);

/// g^{(k)}(0) via the multi-index expansion
/// (sum_j I_j L_j)^l = sum_{|M|=l} l!/M! prod_j (I_j L_j)^{M_j}.
ExactValue g_derivative_multinomial(const QMIntegrand& omega, const MultiIndex& I, int k);

/// Coefficients of lambda^{-r}, r = kappa..0, of the bare integral
/// int |s|^{2 lambda} omega (without the o(s) factor).
struct CoefficientReport {
  LaurentWindow window;  // orders -kappa..0
  int kappa = 0;
  int p = 0;
  int o_s = 1;
  std::string pathway;

  ExactValue coefficient(int order) const { return window.coefficient(order); }
};

CoefficientReport laurent_coeffs(const QMIntegrand& omega, const Section& s);

/// Value of the canonical current of psi/(z^J zbar^K) on the polydisc in the
/// variables outside `frozen`:
/// (-1)^p / ((J-1_J)!(K-1_K)!) int prod_{polar j} log|z_j|^2 d^{J+K} psi.
ExactValue canonical_value(const ConjPolynomial& psi, const PoleData& pole, const VarSet& frozen = {});
ExactValue canonical_current(const QMIntegrand& omega);

/// lambda = 0 value of the continued integral; requires kappa = 0.
ExactValue principal_value(const QMIntegrand& omega, const Section& s);

/// A (p,q)-form alpha_num / z_j^m with a holomorphic pole along z_j = 0.
struct PolarForm {
  ConjForm numerator;
  int variable = 0;
  int order = 1;
};

/// Coefficient of the block top form dz_1..dz_d ^ dzbar_1..dzbar_d.
ConjPolynomial top_coefficient(const ConjForm& form);
/// psi dz ^ dzbar in block order.
ConjForm top_form(const ConjPolynomial& psi);

/// Principal value of a top-degree PolarForm (section z_j).
ExactValue principal_value(const PolarForm& form);

/// <dbar [alpha], xi> = (-1)^{p+q+1} <[alpha], dbar xi>.
ExactValue pairing_dbar_pv(const PolarForm& alpha, const ConjForm& xi);

/// The continued integral (including o(s)) rebuilt from the shifted identity
/// |z^I|^{2 lambda}/(z^J zbar^K) = |z^I|^{2(lambda+N)}/(z^{J+NI} zbar^{K+NI}).
/// Requires phi = 0 and bump orders >= J+K+2NI+1.
RationalFunctionLambda continued_F(const QMIntegrand& omega, const Section& s, int N);

}  // namespace qmc
