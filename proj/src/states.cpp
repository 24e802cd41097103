#include "soxs/states.hpp"

#include <cmath>
#include <stdexcept>

namespace soxs {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

void check_weight(double c, const char* what) {
  if (!(c >= 0.0 && c <= 1.0))
    throw std::invalid_argument(std::string(what) + " out of [0,1]: " +
                                std::to_string(c));
}

}  // namespace

FamilyId family_from_string(const std::string& name) {
  if (name == "rho1") return FamilyId::Rho1;
  if (name == "rho2") return FamilyId::Rho2;
  if (name == "rho3") return FamilyId::Rho3;
  if (name == "werner") return FamilyId::Werner;
  throw std::invalid_argument("unknown family: " + name);
}

std::string to_string(FamilyId id) {
  switch (id) {
    case FamilyId::Rho1: return "rho1";
    case FamilyId::Rho2: return "rho2";
    case FamilyId::Rho3: return "rho3";
    case FamilyId::Werner: return "werner";
  }
  return "?";
}

PureState bell_like(BellKind kind) {
  PureState psi;
  psi.a.setZero();
  switch (kind) {
    case BellKind::PhiPlus:
      psi.a(0) = kInvSqrt2;
      psi.a(3) = kInvSqrt2;
      break;
    case BellKind::PhiMinus:
      psi.a(0) = kInvSqrt2;
      psi.a(3) = -kInvSqrt2;
      break;
    case BellKind::PsiPlus:
      psi.a(1) = kInvSqrt2;
      psi.a(2) = kInvSqrt2;
      break;
    case BellKind::PsiMinus:
      psi.a(1) = kInvSqrt2;
      psi.a(2) = -kInvSqrt2;
      break;
  }
  return psi;
}

DensityOperator mix(const MixtureSpec& spec) {
  double total = 0.0;
  Mat4 m = Mat4::Zero();
  for (const auto& [w, psi] : spec.branches) {
    if (w < 0.0) throw std::invalid_argument("negative branch weight");
    total += w;
    m += w * density_from_pure(psi).m;
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw std::invalid_argument("branch weights sum to " +
                                std::to_string(total));
  return DensityOperator::validated(m);
}

DensityOperator family(FamilyId id, double c) {
  check_weight(c, "family weight c");
  const Mat4 phi_plus = density_from_pure(bell_like(BellKind::PhiPlus)).m;
  const Mat4 psi_minus = density_from_pure(bell_like(BellKind::PsiMinus)).m;
  const Mat4 hh = density_from_pure(ket(0)).m;
  const Mat4 vv = density_from_pure(ket(3)).m;
  Mat4 m;
  switch (id) {
    case FamilyId::Rho1:
      m = c * phi_plus + (1.0 - c) * vv;
      break;
    case FamilyId::Rho2:
      m = c * phi_plus + (1.0 - c) * psi_minus;
      break;
    case FamilyId::Rho3:
      // Fixed 1/3 of |psi-> plus a c-weighted split of the remaining 2/3
      // between the separable endpoints.
      m = (2.0 * c / 3.0) * vv + (2.0 * (1.0 - c) / 3.0) * hh +
          (1.0 / 3.0) * psi_minus;
      break;
    case FamilyId::Werner:
      m = c * psi_minus + (1.0 - c) * 0.25 * Mat4::Identity();
      break;
  }
  return DensityOperator{m};
}

DensityOperator perturb(const DensityOperator& rho, double alpha) {
  check_weight(alpha, "perturbation weight alpha");
  Mat4 m = (1.0 - alpha) * rho.m + alpha * 0.25 * Mat4::Identity();
  return DensityOperator{m};
}

bool is_x_state(const DensityOperator& rho, double tol) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j || i + j == 3) continue;
      if (std::abs(rho.m(i, j)) > tol) return false;
    }
  return true;
}

}  // namespace soxs
