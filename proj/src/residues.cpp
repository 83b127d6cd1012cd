#include "qmc/residues.hpp"

#include <algorithm>
#include <stdexcept>

#include "qmc/moments.hpp"

namespace qmc {

namespace {

const Gaussian kTwoPiI{0, 2};  // times pi

ExactValue two_pi_i() { return {kTwoPiI, 1}; }
ExactValue minus_two_pi_i_pow(int k) { return {gaussian_pow(Gaussian(0, -2), k), k}; }

std::vector<int> without(const std::vector<int>& v, int j) {
  std::vector<int> r;
  std::copy_if(v.begin(), v.end(), std::back_inserter(r), [j](int x) { return x != j; });
  return r;
}

bool contains(const std::vector<int>& v, int j) { return std::find(v.begin(), v.end(), j) != v.end(); }

/// s with basis = s * front ^ rest.
int front_sign(int dim, const ConjForm& front, const ConjForm::Basis& rest, const ConjForm::Basis& full) {
  ConjForm product = wedge(front, ConjForm::basis(dim, rest.dz, rest.dzbar, ConjPolynomial::constant(dim, 1)));
  if (product.terms().size() != 1 || !(product.terms().begin()->first == full))
    throw std::logic_error("front extraction produced an unexpected basis element");
  Gaussian c = product.terms().begin()->second.constant_term();
  return c == Gaussian(1) ? 1 : -1;
}

ConjPolynomial scaled(const ConjPolynomial& p, const Rational& c) { return p * Gaussian(c); }

ConjPolynomial pure_derivative(const ConjPolynomial& p, int j, int nz, int nzbar) {
  MultiIndex a(static_cast<size_t>(p.dimension())), b(static_cast<size_t>(p.dimension()));
  a[static_cast<size_t>(j)] = nz;
  b[static_cast<size_t>(j)] = nzbar;
  return p.derivative(a, b);
}

VarSet all_variables(int d) {
  VarSet v;
  for (int j = 0; j < d; ++j) v.insert(j);
  return v;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

ConjPolynomial combined_top(const ConjForm& omega_num, const ConjForm& xi) {
  ConjForm w = wedge(omega_num, xi);
  int d = omega_num.dimension();
  return w.top_coefficient(all_variables(d));
}

}  // namespace

VarSet ResidueRepresentative::free_variables() const {
  VarSet v;
  for (int j = 0; j < form.dimension(); ++j)
    if (!base.count(j)) v.insert(j);
  return v;
}

ConjPolynomial ResidueRepresentative::top_coefficient() const {
  return form.top_coefficient(free_variables());
}

ResidueRepresentative representative(ConjForm numerator, PoleData pole) {
  if (numerator.dimension() != pole.dimension()) throw std::invalid_argument("dimension mismatch");
  return {{}, std::move(numerator), std::move(pole)};
}

ResidueRepresentative res_aeppli(const ResidueRepresentative& omega, int j) {
  int d = omega.form.dimension();
  if (j < 0 || j >= d) throw std::out_of_range("variable index out of range");
  if (omega.base.count(j)) throw std::invalid_argument("variable already resolved");
  auto u = static_cast<size_t>(j);
  int m = omega.residual_pole.J[u];
  int n = omega.residual_pole.K[u];
  ConjForm front = wedge(ConjForm::dz(d, j), ConjForm::dzbar(d, j));

  ResidueRepresentative out;
  out.base = omega.base;
  out.base.insert(j);
  out.residual_pole = omega.residual_pole;
  out.residual_pole.J[u] = 0;
  out.residual_pole.K[u] = 0;
  out.form = ConjForm(d);
  for (const auto& [basis, coef] : omega.form.terms()) {
    if (!contains(basis.dz, j) || !contains(basis.dzbar, j))
      throw std::invalid_argument("form term lacks dz_" + std::to_string(j + 1) + " ^ dzbar_" +
                                  std::to_string(j + 1));
    ConjForm::Basis rest{without(basis.dz, j), without(basis.dzbar, j)};
    int sign = front_sign(d, front, rest, basis);
    ConjPolynomial c = coef;
    int mm = m, nn = n;
    if (mm == 0) {
      c = c * ConjPolynomial::z(d, j);
      mm = 1;
    }
    if (nn == 0) {
      c = c * ConjPolynomial::zbar(d, j);
      nn = 1;
    }
    c = pure_derivative(c, j, mm - 1, nn - 1);
    c = scaled(c, Rational(sign) / (factorial(mm - 1) * factorial(nn - 1)));
    out.form.add_term(rest, c.restrict_zero({j}));
  }
  return out;
}

ResidueRepresentative res_aeppli_iter(ResidueRepresentative omega, const std::vector<int>& E) {
  for (int j : E) omega = res_aeppli(omega, j);
  return omega;
}

ResidueRepresentative res_aeppli_iter(const ResidueRepresentative& omega, const VarSet& E) {
  return res_aeppli_iter(omega, std::vector<int>(E.begin(), E.end()));
}

ResidueRepresentative res_dolbeault(const PolarForm& alpha) {
  int d = alpha.numerator.dimension();
  int j = alpha.variable;
  if (j < 0 || j >= d) throw std::out_of_range("variable index out of range");
  ResidueRepresentative out{{j}, ConjForm(d), PoleData::none(d)};
  if (alpha.order <= 0) return out;
  ConjForm front = ConjForm::dz(d, j);
  for (const auto& [basis, coef] : alpha.numerator.terms()) {
    if (!contains(basis.dz, j))
      throw std::invalid_argument("conjugate Dolbeault residue needs dz_" + std::to_string(j + 1) + " in every term");
    ConjForm::Basis rest{without(basis.dz, j), basis.dzbar};
    if (contains(rest.dzbar, j)) continue;  // pulls back to zero on z_j = 0
    int sign = front_sign(d, front, rest, basis);
    ConjPolynomial c = pure_derivative(coef, j, alpha.order - 1, 0);
    c = scaled(c, Rational(sign) / factorial(alpha.order - 1));
    out.form.add_term(rest, c.restrict_zero({j}));
  }
  return out;
}

ResidueRepresentative poincare_res(const PolarForm& beta) {
  int d = beta.numerator.dimension();
  if (beta.order != 1) throw std::invalid_argument("Poincare residue needs a pole of order 1");
  auto bd = beta.numerator.bidegree();
  if (!beta.numerator.is_zero() && (!bd || bd->first != d || bd->second != 0))
    throw std::invalid_argument("Poincare residue needs a (d, 0)-form");
  for (const auto& [basis, coef] : beta.numerator.terms())
    for (const auto& [mono, c] : coef.terms())
      if (std::any_of(mono.zbar.begin(), mono.zbar.end(), [](int e) { return e != 0; }))
        throw std::invalid_argument("Poincare residue needs a holomorphic numerator");
  return res_dolbeault(beta);
}

ExactValue integrate(const ResidueRepresentative& rep) {
  if (!rep.residual_pole.polar_support().empty())
    throw std::invalid_argument("representative still has poles; use canonical_value");
  return integrate(rep.top_coefficient(), rep.base);
}

ExactValue canonical_value(const ResidueRepresentative& rep) {
  return canonical_value(rep.top_coefficient(), rep.residual_pole, rep.base);
}

CheckReport make_report(std::string check, ExactValue lhs, ExactValue rhs) {
  CheckReport r;
  r.check = std::move(check);
  r.pass = lhs == rhs;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

CheckReport check_thm_residue(const PolarForm& alpha, const ConjForm& xi) {
  ExactValue lhs = pairing_dbar_pv(alpha, xi);
  PolarForm middle{wedge(alpha.numerator.dbar(), xi), alpha.variable, alpha.order};
  PolarForm product{wedge(alpha.numerator, xi), alpha.variable, alpha.order};
  ExactValue rhs = principal_value(middle) + two_pi_i() * integrate(res_dolbeault(product));
  return make_report("thm_residue", lhs, rhs);
}

CheckReport check_thm_aeppli(const ConjForm& omega_num, const PoleData& pole, const ConjForm& xi) {
  VarSet polar = pole.polar_support();
  require(polar.size() == 1 && pole.two_sided_support() == polar,
          "thm_aeppli needs exactly one polar variable carrying both pole types");
  QMIntegrand w = QMIntegrand::from_psi(pole, combined_top(omega_num, xi));
  ExactValue lhs = canonical_current(w);
  auto rep = res_aeppli(representative(wedge(omega_num, xi), pole), *polar.begin());
  ExactValue rhs = minus_two_pi_i_pow(1) * integrate(rep);
  return make_report("thm_aeppli", lhs, rhs);
}

CheckReport check_thm_aeppli2(const ConjForm& omega_num, const PoleData& pole, const ConjForm& xi) {
  QMIntegrand w = QMIntegrand::from_psi(pole, combined_top(omega_num, xi));
  ExactValue lhs = canonical_current(w);
  VarSet E = pole.two_sided_support();
  auto rep = res_aeppli_iter(representative(wedge(omega_num, xi), pole), E);
  ExactValue rhs = minus_two_pi_i_pow(static_cast<int>(E.size())) * canonical_value(rep);
  return make_report("thm_aeppli2", lhs, rhs);
}

CheckReport check_cor_main(const ConjForm& omega_num, const PoleData& pole, const ConjForm& xi) {
  require(pole.holomorphic_support() == pole.anti_support(),
          "cor_main needs equal holomorphic and anti-holomorphic pole supports");
  QMIntegrand w = QMIntegrand::from_psi(pole, combined_top(omega_num, xi));
  ExactValue lhs = canonical_current(w);
  VarSet E = pole.two_sided_support();
  auto rep = res_aeppli_iter(representative(wedge(omega_num, xi), pole), E);
  ExactValue rhs = minus_two_pi_i_pow(static_cast<int>(E.size())) * integrate(rep);
  return make_report("cor_main", lhs, rhs);
}

CheckReport check_aeppli_poincare(const PolarForm& alpha, const PolarForm& beta) {
  int d = alpha.numerator.dimension();
  require(alpha.variable == beta.variable, "alpha and beta must be polar in the same variable");
  auto ad = alpha.numerator.bidegree();
  require(alpha.numerator.is_zero() || (ad && ad->first == d && ad->second == 0), "alpha must be a (d, 0)-form");
  int j = alpha.variable;
  PoleData pole = PoleData::none(d);
  pole.J[static_cast<size_t>(j)] = alpha.order;
  pole.K[static_cast<size_t>(j)] = beta.order;
  auto lhs_rep = res_aeppli(representative(wedge(alpha.numerator, beta.numerator.conj()), pole), j);

  ConjForm rhs_form = wedge(res_dolbeault(alpha).form, poincare_res(beta).form.conj());
  if (d % 2 == 0) rhs_form = -rhs_form;
  ResidueRepresentative rhs_rep{{j}, rhs_form, PoleData::none(d)};

  CheckReport r = make_report("aeppli_poincare", integrate(lhs_rep), integrate(rhs_rep));
  if (!(lhs_rep.form == rhs_rep.form)) {
    r.pass = false;
    r.note = "representatives differ";
  }
  return r;
}

std::vector<CheckReport> check_metric_dependence(const QMIntegrand& omega, const Section& s,
                                                 const ConjPolynomial& phi) {
  const PoleData& pole = omega.pole;
  require(pole.holomorphic_support() == pole.anti_support(),
          "metric dependence formula needs equal holomorphic and anti-holomorphic pole supports");
  int d = omega.dimension();
  int kap = kappa(pole);
  int o = order_factor(s, pole);
  VarSet E = pole.two_sided_support();

  // C_{-r}(t phi) for t = 0..kappa+1
  std::vector<LaurentWindow> columns;
  for (int t = 0; t <= kap + 1; ++t) {
    ConjPolynomial tphi = phi.is_zero() ? ConjPolynomial(d) : phi * Gaussian(t);
    columns.push_back(laurent_coeffs(omega.with_metric(tphi), s).window);
  }
  auto finite_difference = [&](int r, int order) {
    ExactValue acc;
    for (int i = 0; i <= order; ++i) {
      Rational c = binomial(order, i);
      if ((order - i) % 2) c = -c;
      acc += columns[static_cast<size_t>(i)].coefficient(-r) * ExactValue(Gaussian(c));
    }
    return acc;
  };
  auto residue_integral = [&](const ConjPolynomial& f) {
    auto rep = res_aeppli_iter(representative(top_form(f), pole), E);
    return integrate(rep);
  };

  std::vector<CheckReport> out;
  for (int r = kap; r >= 0; --r) {
    int D = kap - r;
    std::string tag = "[r=" + std::to_string(r) + "]";
    out.push_back(make_report("metric_polynomial_degree" + tag, finite_difference(r, D + 1), {}));
    ExactValue top = finite_difference(r, D) / Gaussian(factorial(D));
    ConjPolynomial weighted = omega.psi;
    ConjPolynomial phiD = phi.is_zero() ? ConjPolynomial::constant(d, D == 0 ? 1 : 0) : phi.pow(D);
    weighted = weighted * phiD;
    Rational c = rational_pow(Rational(-2), D) / (Rational(o) * factorial(D));
    ExactValue rhs = minus_two_pi_i_pow(kap) * ExactValue(Gaussian(c)) * residue_integral(weighted);
    out.push_back(make_report("metric_top_part" + tag, top, rhs));
  }
  if (kap == 1) {
    ExactValue rhs1 = minus_two_pi_i_pow(1) / Gaussian(o) * residue_integral(omega.psi);
    out.push_back(make_report("metric_residue_C-1", columns[0].coefficient(-1), rhs1));
    ExactValue slope = columns[1].coefficient(0) - columns[0].coefficient(0);
    ConjPolynomial phipsi = phi.is_zero() ? ConjPolynomial(d) : phi * omega.psi;
    ExactValue rhs0 = ExactValue(Gaussian(0, 4), 1) / Gaussian(o) * residue_integral(phipsi);
    out.push_back(make_report("metric_slope_C0", slope, rhs0));
  }
  return out;
}

ConjPolynomial rescale_pullback(const ConjPolynomial& psi, const PoleData& pole, int j, const Gaussian& c) {
  if (c.norm() != 1) throw std::invalid_argument("rescaling must preserve the polydisc");
  auto u = static_cast<size_t>(j);
  Gaussian cb = c.conj();
  // dz_j ^ dzbar_j picks up c cbar = 1; the pole picks up c^{-m} cbar^{-n}
  Gaussian factor = gaussian_pow(cb, pole.J[u]) * gaussian_pow(c, pole.K[u]);
  return psi.rescaled(j, c) * factor;
}

}  // namespace qmc
