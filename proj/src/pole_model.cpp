#include "qmc/pole_model.hpp"

#include <algorithm>

namespace qmc {

namespace {

std::string indexed(const std::string& field, int j) {
  return field + "[" + std::to_string(j) + "]";
}

void check_length(const std::string& field, const MultiIndex& v, int d) {
  if (static_cast<int>(v.size()) != d)
    throw ValidationError(field, "length " + std::to_string(v.size()) + " != dimension " +
                                     std::to_string(d));
  for (int j = 0; j < d; ++j)
    if (v[static_cast<size_t>(j)] < 0) throw ValidationError(indexed(field, j), "negative entry");
}

void collect_subsets(const std::vector<int>& pool, size_t start, int k, VarSet& current,
                     std::vector<VarSet>& out) {
  if (k == 0) {
    out.push_back(current);
    return;
  }
  for (size_t i = start; i < pool.size(); ++i) {
    current.insert(pool[i]);
    collect_subsets(pool, i + 1, k - 1, current, out);
    current.erase(pool[i]);
  }
}

}  // namespace

PoleData PoleData::none(int dimension) {
  return {MultiIndex(static_cast<size_t>(dimension)), MultiIndex(static_cast<size_t>(dimension))};
}

VarSet PoleData::holomorphic_support() const {
  VarSet s;
  for (int j = 0; j < dimension(); ++j)
    if (J[static_cast<size_t>(j)] > 0) s.insert(j);
  return s;
}

VarSet PoleData::anti_support() const {
  VarSet s;
  for (int j = 0; j < dimension(); ++j)
    if (K[static_cast<size_t>(j)] > 0) s.insert(j);
  return s;
}

VarSet PoleData::polar_support() const {
  VarSet s;
  for (int j = 0; j < dimension(); ++j)
    if (polar(j)) s.insert(j);
  return s;
}

VarSet PoleData::two_sided_support() const {
  VarSet s;
  for (int j = 0; j < dimension(); ++j)
    if (two_sided(j)) s.insert(j);
  return s;
}

int required_bump(const PoleData& pole, int j) {
  return pole.J.at(static_cast<size_t>(j)) + pole.K.at(static_cast<size_t>(j));
}

int kappa(const PoleData& pole) { return static_cast<int>(pole.two_sided_support().size()); }

int p_of(const PoleData& pole) {
  int p = static_cast<int>(pole.holomorphic_support().size() + pole.anti_support().size());
  if (p - kappa(pole) != static_cast<int>(pole.polar_support().size()))
    throw std::logic_error("pole support count mismatch");
  return p;
}

void validate_section(const Section& s, const PoleData& pole) {
  int d = pole.dimension();
  check_length("section_exponents", s.I, d);
  for (int j = 0; j < d; ++j) {
    int i = s.I[static_cast<size_t>(j)];
    if (pole.polar(j) && i < 1)
      throw ValidationError(indexed("section_exponents", j),
                            "section must vanish on the polar hyperplane z_" + std::to_string(j + 1));
    if (!pole.polar(j) && i != 0)
      throw ValidationError(indexed("section_exponents", j),
                            "section may only vanish on the polar hyperplanes");
  }
}

int order_factor(const Section& s, const PoleData& pole) {
  validate_section(s, pole);
  int o = 1;
  for (int j : pole.two_sided_support()) o *= s.I[static_cast<size_t>(j)];
  return o;
}

Stratification stratify(const PoleData& pole) {
  Stratification st;
  st.E = pole.two_sided_support();
  st.kappa = static_cast<int>(st.E.size());
  std::vector<int> pool(st.E.begin(), st.E.end());
  for (int k = 0; k <= st.kappa; ++k) {
    std::vector<VarSet> level;
    VarSet current;
    collect_subsets(pool, 0, k, current, level);
    st.strata.push_back(std::move(level));
  }
  return st;
}

QMIntegrand QMIntegrand::from_psi(PoleData pole, ConjPolynomial psi, ConjPolynomial metric) {
  int d = pole.dimension();
  check_length("holo_pole", pole.J, d);
  check_length("anti_pole", pole.K, d);
  if (psi.is_zero()) psi = ConjPolynomial(d);
  if (psi.dimension() != d) throw ValidationError("numerator", "dimension mismatch");
  if (metric.is_zero()) metric = ConjPolynomial(d);
  if (metric.dimension() != d) throw ValidationError("metric_weight", "dimension mismatch");
  if (!metric.is_real_valued()) throw ValidationError("metric_weight", "metric weight not real");
  QMIntegrand w;
  w.bump.resize(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    int need = required_bump(pole, j);
    int q = psi.bump_order(j, need + 8);
    if (q < need)
      throw ValidationError(indexed("bump_exponents", j),
                            "bump exponent " + std::to_string(q) + " < J+K = " + std::to_string(need));
    w.bump[static_cast<size_t>(j)] = q;
  }
  w.pole = std::move(pole);
  w.psi = std::move(psi);
  w.metric = std::move(metric);
  return w;
}

QMIntegrand QMIntegrand::with_metric(ConjPolynomial phi) const {
  if (phi.is_zero()) phi = ConjPolynomial(dimension());
  if (!phi.is_real_valued()) throw ValidationError("metric_weight", "metric weight not real");
  QMIntegrand w = *this;
  w.metric = std::move(phi);
  return w;
}

Instance assemble(const ProblemData& data) {
  int d = data.dimension;
  if (d < 1) throw ValidationError("dimension", "must be positive");
  check_length("holo_pole", data.pole.J, d);
  check_length("anti_pole", data.pole.K, d);
  check_length("bump_exponents", data.bump_exponents, d);
  validate_section(data.section, data.pole);
  ConjPolynomial numerator = data.numerator.is_zero() ? ConjPolynomial(d) : data.numerator;
  if (numerator.dimension() != d) throw ValidationError("numerator", "dimension mismatch");
  for (int j = 0; j < d; ++j) {
    int q = data.bump_exponents[static_cast<size_t>(j)];
    int need = required_bump(data.pole, j);
    if (q < need)
      throw ValidationError(indexed("bump_exponents", j),
                            "bump exponent " + std::to_string(q) + " < J+K = " + std::to_string(need));
  }
  ConjPolynomial metric = data.metric.is_zero() ? ConjPolynomial(d) : data.metric;
  if (metric.dimension() != d) throw ValidationError("metric_weight", "dimension mismatch");
  if (!metric.is_real_valued()) throw ValidationError("metric_weight", "metric weight not real");

  ConjPolynomial psi = numerator;
  for (int j = 0; j < d; ++j) psi = psi * ConjPolynomial::bump(d, j, data.bump_exponents[static_cast<size_t>(j)]);

  Instance inst;
  inst.omega.pole = data.pole;
  inst.omega.psi = std::move(psi);
  inst.omega.metric = std::move(metric);
  inst.omega.bump = data.bump_exponents;
  inst.section = data.section;
  inst.bump_exponents = data.bump_exponents;
  inst.numerator = std::move(numerator);
  return inst;
}

}  // namespace qmc
