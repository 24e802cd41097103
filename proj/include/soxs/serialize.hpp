#pragma once

#include "soxs/discord.hpp"
#include "soxs/optics.hpp"
#include "soxs/qstate.hpp"
#include "soxs/tomography.hpp"

#include <json.hpp>

#include <vector>

// JSON wire formats. Density operators are 4x4 arrays of [re, im]
// pairs, row-major, basis order Hh, Hv, Vh, Vv; Stokes tensors are 4x4
// real arrays; intensity records are
// {pol_basis, mode_basis, intensities: [4]}.

namespace soxs {

nlohmann::json matrix_to_json(const Mat4& m);
Mat4 matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DensityOperator& rho);
DensityOperator density_from_json(const nlohmann::json& j);

nlohmann::json to_json(const StokesTensor& s);
StokesTensor stokes_from_json(const nlohmann::json& j);

nlohmann::json to_json(const std::vector<IntensityRecord>& records);
std::vector<IntensityRecord> records_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TomographyReport& report);

NoiseConfig noise_from_json(const nlohmann::json& j);
nlohmann::json to_json(const NoiseConfig& noise);

MinimizerConfig minimizer_from_json(const nlohmann::json& j);

}  // namespace soxs
