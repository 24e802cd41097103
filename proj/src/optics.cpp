#include "soxs/optics.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace soxs {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

Mat2 half_wave_jones(double theta_rad) {
  const double c = std::cos(2.0 * theta_rad), s = std::sin(2.0 * theta_rad);
  return (Mat2() << c, s, s, -c).finished();
}

Mat2 quarter_wave_jones(double theta_rad) {
  const double c = std::cos(theta_rad), s = std::sin(theta_rad);
  const complexd i(0.0, 1.0);
  const complexd one_minus_i(1.0, -1.0);
  Mat2 m;
  m << c * c + i * s * s, one_minus_i * s * c,
       one_minus_i * s * c, s * s + i * c * c;
  return m;
}

Mat2 rotation(double theta_rad) {
  const double c = std::cos(theta_rad), s = std::sin(theta_rad);
  return (Mat2() << c, -s, s, c).finished();
}

bool has_angle(ElementKind k) {
  return k == ElementKind::HalfWave || k == ElementKind::QuarterWave ||
         k == ElementKind::Dove || k == ElementKind::SWavePlate;
}

bool is_astigmatic(ElementKind k) {
  return k == ElementKind::Dove || k == ElementKind::ModeConverter;
}

Mat4 unitary_at(ElementKind kind, double angle_deg) {
  const double a = angle_deg * kDegToRad;
  const Mat2 id = Mat2::Identity();
  switch (kind) {
    case ElementKind::HalfWave:
      return Eigen::kroneckerProduct(half_wave_jones(a), id);
    case ElementKind::QuarterWave:
      return Eigen::kroneckerProduct(quarter_wave_jones(a), id);
    case ElementKind::Dove:
      return Eigen::kroneckerProduct(id, half_wave_jones(a));
    case ElementKind::ModeConverter:
      // Plays the role of a quarter-wave plate with vertical fast axis
      // on the mode factor.
      return Eigen::kroneckerProduct(id, quarter_wave_jones(0.5 * std::numbers::pi));
    case ElementKind::SWavePlate: {
      // Fixed completion: V-polarized reference input |Vh> maps to
      // |phi+> at 0 degrees; the mode factor then rotates with the
      // plate angle, giving |psi-> at 90 degrees.
      Mat4 base = Mat4::Zero();
      const double r = 1.0 / std::sqrt(2.0);
      // Columns: images of |Hh>, |Hv>, |Vh>, |Vv> under
      // CNOT(pol->mode) * (H_pol x I) * (X_pol x I).
      base.col(0) << r, 0, 0, -r;   // |Hh> -> (|Hh> - |Vv>)/sqrt2
      base.col(1) << 0, r, -r, 0;   // |Hv> -> (|Hv> - |Vh>)/sqrt2
      base.col(2) << r, 0, 0, r;    // |Vh> -> (|Hh> + |Vv>)/sqrt2
      base.col(3) << 0, r, r, 0;    // |Vv> -> (|Hv> + |Vh>)/sqrt2
      return Eigen::kroneckerProduct(id, rotation(a)) * base;
    }
    default:
      throw std::invalid_argument("element has no unitary representation");
  }
}

// Depolarize the mode factor: rho -> (1-p) rho + p rho_pol x I/2.
Mat4 depolarize_mode(const Mat4& rho, double p) {
  Mat2 rho_pol = Mat2::Zero();
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int b = 0; b < 2; ++b) rho_pol(a, ap) += rho(2 * a + b, 2 * ap + b);
  return (1.0 - p) * rho +
         p * Eigen::kroneckerProduct(rho_pol, 0.5 * Mat2::Identity()).eval();
}

// Replace the mode qubit: rho -> rho_pol x |m><m|.
Mat4 apply_mask(const Mat4& rho, int mode) {
  Mat2 rho_pol = Mat2::Zero();
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int b = 0; b < 2; ++b) rho_pol(a, ap) += rho(2 * a + b, 2 * ap + b);
  Mat2 proj = Mat2::Zero();
  proj(mode, mode) = 1.0;
  return Eigen::kroneckerProduct(rho_pol, proj);
}

// Evolve one density matrix through an element sequence. Jitter angles
// are sampled first, in element order, so a fixed seed reproduces runs
// regardless of how the evolution is organized.
Mat4 apply_elements(Mat4 rho, const std::vector<Element>& elements,
                    double& weight, const NoiseConfig* noise,
                    std::mt19937_64* rng) {
  std::vector<double> angles(elements.size());
  for (std::size_t k = 0; k < elements.size(); ++k) {
    angles[k] = elements[k].angle_deg;
    if (noise && rng && noise->angle_jitter_sigma_deg > 0.0 &&
        has_angle(elements[k].kind)) {
      std::normal_distribution<double> jitter(0.0,
                                              noise->angle_jitter_sigma_deg);
      angles[k] += jitter(*rng);
    }
  }
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const Element& e = elements[k];
    switch (e.kind) {
      case ElementKind::Mask:
        rho = apply_mask(rho, e.mask_mode);
        break;
      case ElementKind::NeutralFilter:
        weight *= e.transmittance;
        break;
      default: {
        const Mat4 u = unitary_at(e.kind, angles[k]);
        rho = u * rho * u.adjoint();
        if (noise && noise->depolarizing_strength > 0.0 &&
            is_astigmatic(e.kind))
          rho = depolarize_mode(rho, noise->depolarizing_strength);
        break;
      }
    }
  }
  return rho;
}

}  // namespace

Element Element::hwp(double angle_deg) {
  return {ElementKind::HalfWave, angle_deg};
}
Element Element::qwp(double angle_deg) {
  return {ElementKind::QuarterWave, angle_deg};
}
Element Element::dove(double angle_deg) {
  return {ElementKind::Dove, angle_deg};
}
Element Element::mode_converter() { return {ElementKind::ModeConverter}; }
Element Element::swp(double angle_deg) {
  return {ElementKind::SWavePlate, angle_deg};
}
Element Element::mask(int mode) {
  return {ElementKind::Mask, 0.0, mode};
}
Element Element::neutral_filter(double transmittance) {
  if (transmittance < 0.0 || transmittance > 1.0)
    throw std::invalid_argument("transmittance out of [0,1]");
  Element e{ElementKind::NeutralFilter};
  e.transmittance = transmittance;
  return e;
}

Mat4 element_unitary(const Element& e) {
  if (e.kind == ElementKind::Mask || e.kind == ElementKind::NeutralFilter)
    throw std::invalid_argument("mask/neutral filter is not unitary");
  return unitary_at(e.kind, e.angle_deg);
}

Circuit prepare_family_circuit(FamilyId id, double c) {
  if (!(c >= 0.0 && c <= 1.0))
    throw std::invalid_argument("circuit weight c out of [0,1]");
  const PureState vh = ket(2);  // vertically polarized laser, reference mode h
  Circuit circ;
  switch (id) {
    case FamilyId::Rho1:
      circ.branches.push_back(
          {1.0, {Element::swp(0.0), Element::neutral_filter(c)}, vh});
      circ.branches.push_back(
          {1.0, {Element::mask(1), Element::neutral_filter(1.0 - c)}, vh});
      break;
    case FamilyId::Rho2:
      circ.branches.push_back(
          {1.0, {Element::swp(0.0), Element::neutral_filter(c)}, vh});
      circ.branches.push_back(
          {1.0, {Element::swp(90.0), Element::neutral_filter(1.0 - c)}, vh});
      break;
    case FamilyId::Rho3:
      circ.branches.push_back({1.0,
                               {Element::hwp(45.0), Element::mask(0),
                                Element::neutral_filter(2.0 * (1.0 - c) / 3.0)},
                               vh});
      circ.branches.push_back(
          {1.0,
           {Element::mask(1), Element::neutral_filter(2.0 * c / 3.0)},
           vh});
      circ.branches.push_back(
          {1.0, {Element::swp(90.0), Element::neutral_filter(1.0 / 3.0)}, vh});
      break;
    case FamilyId::Werner:
      circ.branches.push_back(
          {1.0, {Element::swp(90.0), Element::neutral_filter(c)}, vh});
      for (int b = 0; b < 4; ++b) {
        std::vector<Element> els;
        if (b / 2 == 0) els.push_back(Element::hwp(45.0));  // H branches
        els.push_back(Element::mask(b % 2));
        els.push_back(Element::neutral_filter((1.0 - c) / 4.0));
        circ.branches.push_back({1.0, std::move(els), vh});
      }
      break;
  }
  return circ;
}

static DensityOperator run_circuit_impl(const Circuit& circuit,
                                        const NoiseConfig* noise,
                                        std::mt19937_64* rng) {
  if (circuit.branches.empty())
    throw std::invalid_argument("circuit has no branches");
  Mat4 sum = Mat4::Zero();
  double total = 0.0;
  for (const auto& branch : circuit.branches) {
    if (branch.source_weight < 0.0)
      throw std::invalid_argument("negative source weight");
    double w = branch.source_weight;
    Mat4 rho = density_from_pure(branch.input).m;
    rho = apply_elements(std::move(rho), branch.elements, w, noise, rng);
    sum += w * rho;
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("all branch weights are zero");
  return DensityOperator::validated(sum / total);
}

DensityOperator run_circuit(const Circuit& circuit) {
  return run_circuit_impl(circuit, nullptr, nullptr);
}

DensityOperator run_circuit(const Circuit& circuit, const NoiseConfig& noise,
                            std::mt19937_64& rng) {
  return run_circuit_impl(circuit, &noise, &rng);
}

std::vector<Element> analyzer_chain(const MeasurementSetting& setting) {
  std::vector<Element> chain;
  switch (setting.pol_basis) {
    case 1:
      chain.push_back(Element::hwp(22.5));
      break;
    case 2:
      chain.push_back(Element::qwp(90.0));
      chain.push_back(Element::hwp(22.5));
      break;
    case 3:
      break;
    default:
      throw std::invalid_argument("bad polarization basis");
  }
  switch (setting.mode_basis) {
    case 1:
      chain.push_back(Element::dove(22.5));
      break;
    case 2:
      chain.push_back(Element::mode_converter());
      chain.push_back(Element::dove(22.5));
      break;
    case 3:
      break;
    default:
      throw std::invalid_argument("bad mode basis");
  }
  return chain;
}

static IntensityRecord simulate_ccd_impl(const DensityOperator& rho,
                                         const MeasurementSetting& setting,
                                         double total_intensity,
                                         const NoiseConfig* noise,
                                         std::mt19937_64* rng) {
  if (total_intensity <= 0.0)
    throw std::invalid_argument("total intensity must be positive");
  double w = 1.0;
  Mat4 rotated =
      apply_elements(rho.m, analyzer_chain(setting), w, noise, rng);
  IntensityRecord rec;
  rec.setting = setting;
  // Diagonal entries of a rotated density matrix are nonnegative up to
  // rounding; clamp so downstream record validation sees physical values.
  for (int k = 0; k < 4; ++k)
    rec.intensities[k] =
        std::max(total_intensity * std::real(rotated(k, k)), 0.0);
  if (noise && rng) {
    std::normal_distribution<double> rel(0.0, noise->intensity_noise_rel);
    for (double& x : rec.intensities) {
      if (noise->intensity_noise_rel > 0.0) x *= 1.0 + rel(*rng);
      x = std::max(x + noise->background_offset, 0.0);
    }
  }
  return rec;
}

IntensityRecord simulate_ccd(const DensityOperator& rho,
                             const MeasurementSetting& setting,
                             double total_intensity) {
  return simulate_ccd_impl(rho, setting, total_intensity, nullptr, nullptr);
}

IntensityRecord simulate_ccd(const DensityOperator& rho,
                             const MeasurementSetting& setting,
                             double total_intensity, const NoiseConfig& noise,
                             std::mt19937_64& rng) {
  return simulate_ccd_impl(rho, setting, total_intensity, &noise, &rng);
}

}  // namespace soxs
