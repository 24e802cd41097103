#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "soxs/states.hpp"
#include "test_helpers.hpp"

using namespace soxs;
using namespace soxs::testing;

TEST_CASE("bell_like amplitudes") {
  const double r = 1.0 / std::sqrt(2.0);
  const auto phi_plus = bell_like(BellKind::PhiPlus);
  CHECK(phi_plus.a(0).real() == doctest::Approx(r));
  CHECK(phi_plus.a(3).real() == doctest::Approx(r));
  CHECK(std::abs(phi_plus.a(1)) + std::abs(phi_plus.a(2)) < 1e-15);

  const auto psi_minus = bell_like(BellKind::PsiMinus);
  CHECK(psi_minus.a(1).real() == doctest::Approx(r));
  CHECK(psi_minus.a(2).real() == doctest::Approx(-r));

  for (auto kind : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                    BellKind::PsiMinus})
    CHECK(bell_like(kind).norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("rho1 endpoints") {
  const auto at_one = family(FamilyId::Rho1, 1.0);
  const auto bell = density_from_pure(bell_like(BellKind::PhiPlus));
  CHECK((at_one.m - bell.m).cwiseAbs().maxCoeff() < 1e-15);

  const auto at_zero = family(FamilyId::Rho1, 0.0);
  CHECK(at_zero.m(3, 3).real() == doctest::Approx(1.0));
  CHECK(std::abs(at_zero.m(0, 0)) + std::abs(at_zero.m(0, 3)) < 1e-15);
}

TEST_CASE("rho3 structure at c=0.5") {
  const auto rho = family(FamilyId::Rho3, 0.5);
  CHECK(std::abs(rho.m.trace() - complexd(1.0)) < 1e-12);
  // 1/3 each on the separable endpoints, 1/6 each on the psi- block.
  CHECK(rho.m(0, 0).real() == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(rho.m(3, 3).real() == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(rho.m(1, 1).real() == doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(rho.m(2, 2).real() == doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(rho.m(1, 2).real() == doctest::Approx(-1.0 / 6).epsilon(1e-12));
  CHECK(rho.m(2, 1).real() == doctest::Approx(-1.0 / 6).epsilon(1e-12));
}

TEST_CASE("psi- overlap of rho3 is 1/3 for every c") {
  const Vec4 psi = bell_like(BellKind::PsiMinus).a;
  for (double c : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    const auto rho = family(FamilyId::Rho3, c);
    CHECK(std::real(psi.dot(rho.m * psi)) ==
          doctest::Approx(1.0 / 3).epsilon(1e-12));
  }
}

TEST_CASE("family weight validation") {
  CHECK_THROWS_AS(family(FamilyId::Rho1, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(family(FamilyId::Rho2, 1.1), std::invalid_argument);
  CHECK_THROWS_AS(perturb(family(FamilyId::Rho1, 0.5), 1.5),
                  std::invalid_argument);
}

TEST_CASE("family is affine in c for rho1 and rho2") {
  for (auto id : {FamilyId::Rho1, FamilyId::Rho2})
    for (double c : {0.1, 0.3, 0.7}) {
      const Mat4 direct = family(id, c).m;
      const Mat4 affine = c * family(id, 1.0).m + (1.0 - c) * family(id, 0.0).m;
      CHECK((direct - affine).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("all family members are X-states") {
  for (auto id : {FamilyId::Rho1, FamilyId::Rho2, FamilyId::Rho3,
                  FamilyId::Werner})
    for (double c : {0.0, 0.25, 0.5, 0.75, 1.0})
      CHECK(is_x_state(family(id, c), 1e-10));
}

TEST_CASE("perturb endpoints") {
  const auto rho = family(FamilyId::Rho2, 0.3);
  CHECK((perturb(rho, 0.0).m - rho.m).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((perturb(rho, 1.0).m - 0.25 * Mat4::Identity()).cwiseAbs().maxCoeff() <
        1e-15);
}

TEST_CASE("perturb preserves the X pattern") {
  CHECK(is_x_state(perturb(family(FamilyId::Rho1, 0.7), 0.2), 1e-12));
}

TEST_CASE("perturb commutes with convex mixing") {
  const auto rho = random_density();
  const auto sigma = random_density();
  const double c = 0.37, alpha = 0.21;
  const Mat4 lhs =
      perturb(DensityOperator{c * rho.m + (1 - c) * sigma.m}, alpha).m;
  const Mat4 rhs =
      c * perturb(rho, alpha).m + (1 - c) * perturb(sigma, alpha).m;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("mean fidelity of rho1 under alpha=0.1 admixture") {
  // Fig-style summary on the five prepared weights.
  double sum = 0.0;
  for (double c : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto rho = family(FamilyId::Rho1, c);
    sum += fidelity(rho, perturb(rho, 0.1));
  }
  CHECK(sum / 5.0 == doctest::Approx(0.92).epsilon(0.025));
}

TEST_CASE("full-rank |Dd> projector is not an X-state") {
  PureState dd;
  dd.a << 0.5, 0.5, 0.5, 0.5;
  CHECK_FALSE(is_x_state(density_from_pure(dd), 1e-6));
}

TEST_CASE("mix validates weights") {
  MixtureSpec spec;
  spec.branches = {{0.5, ket(0)}, {0.4, ket(3)}};
  CHECK_THROWS_AS(mix(spec), std::invalid_argument);
  spec.branches = {{0.5, ket(0)}, {0.5, ket(3)}};
  const auto rho = mix(spec);
  CHECK(rho.m(0, 0).real() == doctest::Approx(0.5));
}

TEST_CASE("family string round trip") {
  for (auto id : {FamilyId::Rho1, FamilyId::Rho2, FamilyId::Rho3,
                  FamilyId::Werner})
    CHECK(family_from_string(to_string(id)) == id);
  CHECK_THROWS_AS(family_from_string("rho4"), std::invalid_argument);
}
