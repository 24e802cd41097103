#pragma once

#include "soxs/qstate.hpp"
#include "soxs/states.hpp"
#include "soxs/tomography.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace soxs {

enum class ElementKind {
  HalfWave,       // polarization half-wave plate at fast-axis angle
  QuarterWave,    // polarization quarter-wave plate
  Dove,           // Dove prism: half-wave form on the mode factor
  ModeConverter,  // pi/2 cylindrical-lens converter: quarter-wave form
                  // on the mode factor, axis vertical
  SWavePlate,     // patterned retarder coupling the two factors
  Mask,           // holographic mask: sets the mode qubit (non-unitary)
  NeutralFilter   // variable attenuator: scales the branch weight
};

struct Element {
  ElementKind kind = ElementKind::HalfWave;
  double angle_deg = 0.0;
  int mask_mode = 0;           // 0 = h, 1 = v
  double transmittance = 1.0;  // neutral filter only

  static Element hwp(double angle_deg);
  static Element qwp(double angle_deg);
  static Element dove(double angle_deg);
  static Element mode_converter();
  static Element swp(double angle_deg);
  static Element mask(int mode);
  static Element neutral_filter(double transmittance);
};

/// One independent laser beam: a pure input, the elements it crosses,
/// and its source intensity weight.
struct CircuitBranch {
  double source_weight = 1.0;
  std::vector<Element> elements;
  PureState input;
};

/// Weighted pure branches combined incoherently on the beam splitter.
struct Circuit {
  std::vector<CircuitBranch> branches;
};

/// Parametric bench imperfections. All draws come from an explicit
/// seeded stream; realization order is fixed as jitter angles (per
/// element, listed order), then depolarizing, then detector noise.
struct NoiseConfig {
  double angle_jitter_sigma_deg = 0.0;
  double depolarizing_strength = 0.0;  // astigmatic elements only
  double intensity_noise_rel = 0.0;
  double background_offset = 0.0;
  std::uint64_t seed = 0;
};

/// 4x4 unitary of a unitary-type element. Throws for Mask and
/// NeutralFilter.
Mat4 element_unitary(const Element& e);

/// The bench circuit preparing family(id, c): per-branch neutral-filter
/// transmittances carry the mixture weights.
Circuit prepare_family_circuit(FamilyId id, double c);

/// Incoherent weighted combination of the evolved branches. The noisy
/// overload samples per-element angle jitter and applies a depolarizing
/// channel on the mode factor after each astigmatic element.
DensityOperator run_circuit(const Circuit& circuit);
DensityOperator run_circuit(const Circuit& circuit, const NoiseConfig& noise,
                            std::mt19937_64& rng);

/// Element prefix rotating the requested eigenbases onto the
/// computational basis, polarization part first.
std::vector<Element> analyzer_chain(const MeasurementSetting& setting);

/// Four CCD intensities for one setting: total_intensity times the
/// computational-basis populations after the analyzer chain. Noise adds
/// relative Gaussian fluctuation and a background offset, clipped at 0.
IntensityRecord simulate_ccd(const DensityOperator& rho,
                             const MeasurementSetting& setting,
                             double total_intensity);
IntensityRecord simulate_ccd(const DensityOperator& rho,
                             const MeasurementSetting& setting,
                             double total_intensity, const NoiseConfig& noise,
                             std::mt19937_64& rng);

}  // namespace soxs
