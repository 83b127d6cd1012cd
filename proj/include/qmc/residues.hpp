#pragma once

// Single-chart residue representatives and exact identity checks.
//
// A representative lives on {z_j = 0, j in base}.  Extracting dz_j ^ dzbar_j
// (or dz_j) to the front of a form picks up a reordering sign, which the
// representative keeps; integrals of representatives use the block
// orientation of the remaining variables.

#include <string>
#include <vector>

#include "qmc/continuation.hpp"

namespace qmc {

struct ResidueRepresentative {
  VarSet base;
  ConjForm form;
  PoleData residual_pole;

  /// Variables not in base.
  VarSet free_variables() const;
  /// Coefficient of the block top form in the free variables.
  ConjPolynomial top_coefficient() const;
  bool operator==(const ResidueRepresentative&) const = default;
};

/// numerator / (z^J zbar^K) as an unresolved representative.
ResidueRepresentative representative(ConjForm numerator, PoleData pole);

/// One Aeppli step in variable j (orders (J_j, K_j), padded to >= 1).
ResidueRepresentative res_aeppli(const ResidueRepresentative& omega, int j);
/// Aeppli steps over E in ascending order (or the given order).
ResidueRepresentative res_aeppli_iter(ResidueRepresentative omega, const std::vector<int>& E);
ResidueRepresentative res_aeppli_iter(const ResidueRepresentative& omega, const VarSet& E);

/// (1/(m-1)!) d^{m-1}/dz_j^{m-1} of the dz_j-coefficient, restricted to z_j = 0.
/// Every term of the numerator must contain dz_j.
ResidueRepresentative res_dolbeault(const PolarForm& alpha);
/// b|_{z_j=0} for (b/z_j) dz with b holomorphic.
ResidueRepresentative poincare_res(const PolarForm& beta);

/// Plain integral over the free variables; requires no residual pole.
ExactValue integrate(const ResidueRepresentative& rep);
/// Canonical current of the representative paired with 1.
ExactValue canonical_value(const ResidueRepresentative& rep);

struct CheckReport {
  std::string check;
  ExactValue lhs;
  ExactValue rhs;
  bool pass = false;
  std::string note;

  ExactValue difference() const { return lhs - rhs; }
};

CheckReport make_report(std::string check, ExactValue lhs, ExactValue rhs);

/// <dbar[alpha], xi> = <[dbar alpha], xi> + 2 pi i int Res(alpha ^ xi).
CheckReport check_thm_residue(const PolarForm& alpha, const ConjForm& xi);
/// Single two-sided polar variable: <{omega}, xi> = -2 pi i int Res_A(omega ^ xi).
CheckReport check_thm_aeppli(const ConjForm& omega_num, const PoleData& pole, const ConjForm& xi);
/// <{omega}, xi> = (-2 pi i)^kappa <{Res_A^E(omega ^ xi)}, 1>.
CheckReport check_thm_aeppli2(const ConjForm& omega_num, const PoleData& pole, const ConjForm& xi);
/// supp J = supp K: <{omega}, xi> = (-2 pi i)^kappa int Res_A^E(omega ^ xi).
CheckReport check_cor_main(const ConjForm& omega_num, const PoleData& pole, const ConjForm& xi);
/// Res_A(alpha ^ conj(beta)) = (-1)^{d-1} Res(alpha) ^ conj(Res_P beta).
CheckReport check_aeppli_poincare(const PolarForm& alpha, const PolarForm& beta);

/// Polynomial dependence of C_{-r}(t phi) on t and the residue formula for
/// its top part; requires supp J = supp K.
std::vector<CheckReport> check_metric_dependence(const QMIntegrand& omega, const Section& s,
                                                 const ConjPolynomial& phi);

/// Top coefficient of psi/(z^J zbar^K) dz^dzbar pulled back by z_j -> c z_j
/// (|c| = 1), re-expressed over the same pole.
ConjPolynomial rescale_pullback(const ConjPolynomial& psi, const PoleData& pole, int j, const Gaussian& c);

}  // namespace qmc
