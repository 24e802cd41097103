#pragma once

#include "soxs/qstate.hpp"

#include <array>
#include <optional>
#include <vector>

namespace soxs {

/// One of the 9 joint measurement settings: eigenbasis index per degree
/// of freedom. 1 = sigma_1 (D/A resp. d/a), 2 = sigma_2 (R/L resp. r/l),
/// 3 = sigma_3 (H/V resp. h/v).
struct MeasurementSetting {
  int pol_basis = 3;
  int mode_basis = 3;
};

/// The four CCD intensities of one setting, in outcome order
/// (++, +-, -+, --) by basis eigenvalue. Arbitrary units.
struct IntensityRecord {
  MeasurementSetting setting;
  std::array<double, 4> intensities{};
};

struct TomographyReport {
  Mat4 rho_raw;                 // Hermitian, trace 1, possibly non-PSD
  DensityOperator rho_physical;
  std::optional<double> fidelity_vs_target;
  double negative_eigenvalue_mass = 0.0;
};

/// All 9 settings in row-major (pol_basis, mode_basis) order.
std::vector<MeasurementSetting> all_settings();

/// Probabilities of the four joint eigenbasis projectors, order
/// (++, +-, -+, --); sums to 1.
Eigen::Vector4d forward_probabilities(const DensityOperator& rho,
                                      const MeasurementSetting& setting);

/// Stokes tensor from the 36 intensities. Each record is normalized by
/// its total (P = I/I_T); S_ij for i,j >= 1 comes from setting (i,j),
/// marginals S_i0 from setting (i,3) and S_0j from setting (3,j).
/// Requires exactly one record per setting, none all-zero.
StokesTensor stokes_from_records(const std::vector<IntensityRecord>& records);

/// Clip negative eigenvalues at zero and renormalize the trace.
/// Idempotent; PSD inputs pass through unchanged.
DensityOperator project_physical(const Mat4& rho_raw);

/// Linear inversion plus physicality projection; reports fidelity when a
/// target is supplied and the total clipped eigenvalue mass.
TomographyReport reconstruct(
    const std::vector<IntensityRecord>& records,
    const std::optional<DensityOperator>& target = std::nullopt);

}  // namespace soxs
