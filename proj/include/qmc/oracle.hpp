#pragma once

// Closed-form construction of
//   F(lambda) = o(s) int |z^I|^{2 lambda} e^{-2 lambda phi} psi/(z^J zbar^K) dz^dzbar
// from angular orthogonality and the radial integral alone, with e^{-2 lambda phi}
// truncated after the lambda^T term.

#include <optional>
#include <vector>

#include "qmc/exact.hpp"
#include "qmc/pole_model.hpp"

namespace qmc {

struct OracleF {
  RationalFunctionLambda F;
  int truncation = 0;
  int kappa = 0;
  int o_s = 1;
  /// Orders above this are affected by the truncation.
  int validity_order() const { return truncation - kappa; }
};

/// truncation < 0 selects the default (kappa).
OracleF build_F(const QMIntegrand& omega, const Section& s, int truncation = -1);

struct OracleLaurent {
  LaurentWindow window;  // starts at -kappa (or lower if the bound is violated)
  int pole_order = 0;    // true order of the pole at 0
  bool within_kappa = true;
};

OracleLaurent laurent(const OracleF& f);

struct PoleAuditEntry {
  Rational location;
  int order = 0;
  bool bound_satisfied = true;
};

struct PoleAudit {
  std::optional<Rational> bound;  // absent when nothing is polar
  std::vector<PoleAuditEntry> entries;
  bool all_satisfied() const;
};

/// max_j min((J_j-1)/I_j, (K_j-1)/I_j) over polar j.
std::optional<Rational> pole_bound(const PoleData& pole, const Section& s);
PoleAudit pole_audit(const RationalFunctionLambda& F, const PoleData& pole, const Section& s);

}  // namespace qmc
