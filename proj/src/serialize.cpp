#include "soxs/serialize.hpp"

#include <stdexcept>

namespace soxs {

using nlohmann::json;

json matrix_to_json(const Mat4& m) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat4 matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4)
    throw std::invalid_argument("expected a 4x4 matrix");
  Mat4 m;
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_array() || j[i].size() != 4)
      throw std::invalid_argument("expected a 4x4 matrix");
    for (int k = 0; k < 4; ++k) {
      const auto& cell = j[i][k];
      if (!cell.is_array() || cell.size() != 2)
        throw std::invalid_argument("matrix entries must be [re, im] pairs");
      m(i, k) = complexd(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return m;
}

json to_json(const DensityOperator& rho) { return matrix_to_json(rho.m); }

DensityOperator density_from_json(const json& j) {
  return DensityOperator::validated(matrix_from_json(j));
}

json to_json(const StokesTensor& s) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(s.s(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

StokesTensor stokes_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4)
    throw std::invalid_argument("expected a 4x4 real array");
  StokesTensor out;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) out.s(i, k) = j[i][k].get<double>();
  return out;
}

json to_json(const std::vector<IntensityRecord>& records) {
  json out = json::array();
  for (const auto& rec : records)
    out.push_back({{"pol_basis", rec.setting.pol_basis},
                   {"mode_basis", rec.setting.mode_basis},
                   {"intensities", rec.intensities}});
  return out;
}

std::vector<IntensityRecord> records_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a record array");
  std::vector<IntensityRecord> out;
  for (const auto& item : j) {
    IntensityRecord rec;
    rec.setting.pol_basis = item.at("pol_basis").get<int>();
    rec.setting.mode_basis = item.at("mode_basis").get<int>();
    const auto& in = item.at("intensities");
    if (!in.is_array() || in.size() != 4)
      throw std::invalid_argument("intensities must have 4 entries");
    for (int k = 0; k < 4; ++k) rec.intensities[k] = in[k].get<double>();
    out.push_back(rec);
  }
  return out;
}

json to_json(const TomographyReport& report) {
  json out;
  out["rho_raw"] = matrix_to_json(report.rho_raw);
  out["rho_physical"] = to_json(report.rho_physical);
  out["negative_eigenvalue_mass"] = report.negative_eigenvalue_mass;
  if (report.fidelity_vs_target)
    out["fidelity_vs_target"] = *report.fidelity_vs_target;
  return out;
}

NoiseConfig noise_from_json(const json& j) {
  NoiseConfig n;
  n.angle_jitter_sigma_deg = j.value("angle_jitter_sigma_deg", 0.0);
  n.depolarizing_strength = j.value("depolarizing_strength", 0.0);
  n.intensity_noise_rel = j.value("intensity_noise_rel", 0.0);
  n.background_offset = j.value("background_offset", 0.0);
  n.seed = j.value("seed", std::uint64_t{0});
  if (n.angle_jitter_sigma_deg < 0 || n.intensity_noise_rel < 0 ||
      n.background_offset < 0 || n.depolarizing_strength < 0 ||
      n.depolarizing_strength > 1)
    throw std::invalid_argument("invalid noise configuration");
  return n;
}

json to_json(const NoiseConfig& noise) {
  return {{"angle_jitter_sigma_deg", noise.angle_jitter_sigma_deg},
          {"depolarizing_strength", noise.depolarizing_strength},
          {"intensity_noise_rel", noise.intensity_noise_rel},
          {"background_offset", noise.background_offset},
          {"seed", noise.seed}};
}

MinimizerConfig minimizer_from_json(const json& j) {
  MinimizerConfig cfg;
  cfg.n_theta = j.value("n_theta", cfg.n_theta);
  cfg.n_phi = j.value("n_phi", cfg.n_phi);
  cfg.refine_iterations = j.value("refine_iterations", cfg.refine_iterations);
  cfg.refine_tolerance = j.value("refine_tolerance", cfg.refine_tolerance);
  return cfg;
}

}  // namespace soxs
