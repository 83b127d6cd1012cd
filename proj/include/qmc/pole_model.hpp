#pragma once

// Local model of a quasi-meromorphic integrand on the closed unit polydisc:
// psi / (z^J zbar^K) dz ^ dzbar with psi = P * prod_j (1 - z_j zbar_j)^{q_j},
// a monomial section s = z^I and a metric weight phi (|s| = |z^I| e^{-phi}).

#include <stdexcept>
#include <string>
#include <vector>

#include "qmc/conj_algebra.hpp"

namespace qmc {

/// Invalid input, tagged with the offending field (e.g. "bump_exponents[1]").
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct PoleData {
  MultiIndex J;  // holomorphic orders
  MultiIndex K;  // anti-holomorphic orders

  static PoleData none(int dimension);
  int dimension() const { return static_cast<int>(J.size()); }
  bool polar(int j) const { return J.at(j) + K.at(j) > 0; }
  bool two_sided(int j) const { return J.at(j) > 0 && K.at(j) > 0; }
  VarSet holomorphic_support() const;
  VarSet anti_support() const;
  VarSet polar_support() const;
  VarSet two_sided_support() const;
  bool operator==(const PoleData&) const = default;
};

struct Section {
  MultiIndex I;
  bool operator==(const Section&) const = default;
};

int kappa(const PoleData& pole);
int p_of(const PoleData& pole);
/// prod of I_j over two-sided j.
int order_factor(const Section& s, const PoleData& pole);
/// Smallest bump exponent in z_j for which every boundary term of the
/// J_j + K_j integrations by parts vanishes: J_j + K_j.
int required_bump(const PoleData& pole, int j);
/// Throws ValidationError unless supp(I) equals the polar support.
void validate_section(const Section& s, const PoleData& pole);

struct Stratification {
  /// strata[k] lists the coordinate subspaces {z_S = 0}, |S| = k, S inside E.
  std::vector<std::vector<VarSet>> strata;
  int kappa = 0;
  VarSet E;
};

Stratification stratify(const PoleData& pole);

/// psi/(z^J zbar^K) dz^dzbar with its metric weight.  psi already contains the
/// bump factors; `bump` records the largest (1 - z_j zbar_j) power dividing it.
struct QMIntegrand {
  PoleData pole;
  ConjPolynomial psi;
  MultiIndex bump;
  ConjPolynomial metric;

  /// Validates dimensions, bump orders (q_j >= required_bump) and that the
  /// metric weight is real.  `metric` may be default-constructed for 0.
  static QMIntegrand from_psi(PoleData pole, ConjPolynomial psi, ConjPolynomial metric = {});
  int dimension() const { return pole.dimension(); }
  QMIntegrand with_metric(ConjPolynomial phi) const;
};

/// Raw problem data as it appears in a problem file.
struct ProblemData {
  int dimension = 0;
  Section section;
  PoleData pole;
  ConjPolynomial numerator;
  MultiIndex bump_exponents;
  ConjPolynomial metric;
};

struct Instance {
  QMIntegrand omega;
  Section section;
  MultiIndex bump_exponents;
  ConjPolynomial numerator;
};

/// psi = P * prod (1 - z_j zbar_j)^{q_j}, with every invariant checked.
Instance assemble(const ProblemData& data);

}  // namespace qmc
