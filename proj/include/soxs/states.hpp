#pragma once

#include "soxs/qstate.hpp"

#include <string>
#include <utility>
#include <vector>

namespace soxs {

/// The mixed-state families under study. Rho1..Rho3 are the three
/// incoherent spin-orbit mixtures; Werner mixes a Bell-like mode with
/// the maximally mixed state.
enum class FamilyId { Rho1, Rho2, Rho3, Werner };

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// Weighted ensemble of pure branches; weights sum to 1.
struct MixtureSpec {
  std::vector<std::pair<double, PureState>> branches;
};

FamilyId family_from_string(const std::string& name);
std::string to_string(FamilyId id);

/// |phi+-> = (|Hh> +- |Vv>)/sqrt2, |psi+-> = (|Hv> +- |Vh>)/sqrt2.
PureState bell_like(BellKind kind);

/// Incoherent sum of the branches. Throws if weights do not sum to 1
/// within 1e-10 or a branch is not normalized.
DensityOperator mix(const MixtureSpec& spec);

/// Family member at weight c:
///   rho1 = c|phi+><phi+| + (1-c)|Vv><Vv|
///   rho2 = c|phi+><phi+| + (1-c)|psi-><psi-|
///   rho3 = (2c/3)|Vv><Vv| + (2(1-c)/3)|Hh><Hh| + (1/3)|psi-><psi-|
///   werner = c|psi-><psi-| + (1-c) I/4
/// All are X-states in the computational basis.
DensityOperator family(FamilyId id, double c);

/// Identity admixture rho' = (1-alpha) rho + alpha I/4.
DensityOperator perturb(const DensityOperator& rho, double alpha);

/// True iff every entry outside the diagonal and anti-diagonal has
/// magnitude <= tol.
bool is_x_state(const DensityOperator& rho, double tol);

}  // namespace soxs
