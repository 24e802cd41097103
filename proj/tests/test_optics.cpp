#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "soxs/optics.hpp"
#include "soxs/tomography.hpp"
#include "test_helpers.hpp"

#include <algorithm>

using namespace soxs;
using namespace soxs::testing;

namespace {

const std::vector<Element> kUnitaryElements = {
    Element::hwp(45.0),  Element::hwp(22.5),       Element::qwp(90.0),
    Element::qwp(13.0),  Element::dove(22.5),      Element::mode_converter(),
    Element::swp(0.0),   Element::swp(90.0),       Element::swp(37.0)};

// Largest |amplitude| mismatch after aligning global phase.
double phase_free_distance(const Vec4& a, const Vec4& b) {
  int ref = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(b(i)) > std::abs(b(ref))) ref = i;
  const complexd phase = a(ref) / b(ref);
  return (a - phase / std::abs(phase) * b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("all unitary elements are unitary") {
  for (const auto& e : kUnitaryElements) {
    const Mat4 u = element_unitary(e);
    CHECK((u.adjoint() * u - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("mask and neutral filter have no unitary") {
  CHECK_THROWS_AS(element_unitary(Element::mask(0)), std::invalid_argument);
  CHECK_THROWS_AS(element_unitary(Element::neutral_filter(0.5)),
                  std::invalid_argument);
}

TEST_CASE("half-wave plate at 45 degrees flips polarization") {
  const Mat4 u = element_unitary(Element::hwp(45.0));
  const Vec4 out = u * ket(0).a;  // |Hh> -> |Vh>
  CHECK(phase_free_distance(out, ket(2).a) < 1e-12);
}

TEST_CASE("Dove prism at 22.5 degrees balances the mode basis") {
  const Mat4 u = element_unitary(Element::dove(22.5));
  Vec4 expected = (ket(0).a + ket(1).a) / std::sqrt(2.0);
  CHECK(phase_free_distance(u * ket(0).a, expected) < 1e-12);
}

TEST_CASE("s-wave plate mapping constraints") {
  const Vec4 in = ket(2).a;  // vertically polarized reference |Vh>
  CHECK(phase_free_distance(element_unitary(Element::swp(0.0)) * in,
                            bell_like(BellKind::PhiPlus).a) < 1e-12);
  CHECK(phase_free_distance(element_unitary(Element::swp(90.0)) * in,
                            bell_like(BellKind::PsiMinus).a) < 1e-12);
}

TEST_CASE("noiseless circuits reproduce the analytic families") {
  for (auto id : {FamilyId::Rho1, FamilyId::Rho2, FamilyId::Rho3,
                  FamilyId::Werner})
    for (int k = 0; k <= 10; ++k) {
      const double c = 0.1 * k;
      const auto produced = run_circuit(prepare_family_circuit(id, c));
      CHECK((produced.m - family(id, c).m).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("rho1 circuit at c=1 collapses to the Bell branch") {
  const auto rho = run_circuit(prepare_family_circuit(FamilyId::Rho1, 1.0));
  const auto bell = density_from_pure(bell_like(BellKind::PhiPlus));
  CHECK((rho.m - bell.m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("rho3 circuit transmittances sum to one") {
  for (double c : {0.0, 0.3, 1.0}) {
    const auto circ = prepare_family_circuit(FamilyId::Rho3, c);
    double total = 0.0;
    for (const auto& b : circ.branches)
      for (const auto& e : b.elements)
        if (e.kind == ElementKind::NeutralFilter) total += e.transmittance;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("circuit weight validation") {
  CHECK_THROWS_AS(prepare_family_circuit(FamilyId::Rho1, 1.2),
                  std::invalid_argument);
  Circuit dead = prepare_family_circuit(FamilyId::Rho1, 0.0);
  // kill the surviving branch too
  for (auto& b : dead.branches)
    for (auto& e : b.elements)
      if (e.kind == ElementKind::NeutralFilter) e.transmittance = 0.0;
  CHECK_THROWS_AS(run_circuit(dead), std::invalid_argument);
  CHECK_THROWS_AS(run_circuit(Circuit{}), std::invalid_argument);
}

TEST_CASE("branch order does not matter") {
  auto circ = prepare_family_circuit(FamilyId::Rho3, 0.4);
  const auto a = run_circuit(circ);
  std::reverse(circ.branches.begin(), circ.branches.end());
  const auto b = run_circuit(circ);
  CHECK((a.m - b.m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("depolarizing degrades fidelity monotonically") {
  const auto target = family(FamilyId::Rho2, 1.0);
  double previous = 1.0 + 1e-12;
  for (double strength : {0.0, 0.05, 0.1, 0.2, 0.4}) {
    NoiseConfig noise;
    noise.depolarizing_strength = strength;
    std::mt19937_64 rng_(7);
    const auto rho =
        run_circuit(prepare_family_circuit(FamilyId::Rho2, 1.0), noise, rng_);
    const double f = fidelity(target, rho);
    CHECK(f <= previous);
    if (strength > 0.0) CHECK(f < 1.0);
    previous = f;
  }
}

TEST_CASE("zero-strength noise equals the noiseless run bit for bit") {
  const auto circ = prepare_family_circuit(FamilyId::Rho1, 0.6);
  NoiseConfig zero;
  std::mt19937_64 rng_(123);
  const auto noisy = run_circuit(circ, zero, rng_);
  const auto clean = run_circuit(circ);
  CHECK((noisy.m - clean.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("seeded noisy runs are reproducible") {
  const auto circ = prepare_family_circuit(FamilyId::Rho2, 0.3);
  NoiseConfig noise;
  noise.angle_jitter_sigma_deg = 1.0;
  noise.depolarizing_strength = 0.05;
  std::mt19937_64 r1(42), r2(42);
  const auto a = run_circuit(circ, noise, r1);
  const auto b = run_circuit(circ, noise, r2);
  CHECK((a.m - b.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("analyzer chains match the spec layout") {
  CHECK(analyzer_chain({3, 3}).empty());
  const auto chain = analyzer_chain({1, 1});
  REQUIRE(chain.size() == 2);
  CHECK(chain[0].kind == ElementKind::HalfWave);
  CHECK(chain[0].angle_deg == doctest::Approx(22.5));
  CHECK(chain[1].kind == ElementKind::Dove);
  CHECK(chain[1].angle_deg == doctest::Approx(22.5));
}

TEST_CASE("analyzer chain equals direct eigenbasis projection") {
  for (int i = 0; i < 50; ++i) {
    const auto rho = random_density();
    for (const auto& setting : all_settings()) {
      const Eigen::Vector4d direct = forward_probabilities(rho, setting);
      const auto rec = simulate_ccd(rho, setting, 1.0);
      for (int k = 0; k < 4; ++k)
        CHECK(std::abs(rec.intensities[k] - direct(k)) < 1e-10);
    }
  }
}

TEST_CASE("simulate_ccd on computational eigenstates") {
  const auto rec = simulate_ccd(density_from_pure(ket(3)), {3, 3}, 1.0);
  CHECK(rec.intensities[3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rec.intensities[0] + rec.intensities[1] + rec.intensities[2] < 1e-12);

  const auto mixed = DensityOperator::validated(0.25 * Mat4::Identity());
  const auto flat = simulate_ccd(mixed, {2, 1}, 2.0);
  for (double x : flat.intensities) CHECK(x == doctest::Approx(0.5));
}

TEST_CASE("noisy CCD outputs stay nonnegative and degrade fidelity") {
  NoiseConfig noise;
  noise.background_offset = 0.02;
  noise.intensity_noise_rel = 0.05;
  std::mt19937_64 rng_(5);
  const auto rho = family(FamilyId::Rho1, 0.8);
  std::vector<IntensityRecord> records;
  for (const auto& setting : all_settings()) {
    records.push_back(simulate_ccd(rho, setting, 1.0, noise, rng_));
    for (double x : records.back().intensities) CHECK(x >= 0.0);
  }
  const auto rep = reconstruct(records, rho);
  CHECK(*rep.fidelity_vs_target < 1.0);
  CHECK(*rep.fidelity_vs_target > 0.8);
}
