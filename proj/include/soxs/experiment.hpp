#pragma once

#include "soxs/discord.hpp"
#include "soxs/optics.hpp"
#include "soxs/states.hpp"
#include "soxs/tomography.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace soxs {

/// One sweep/tomography run description, parsed from the CLI JSON
/// config. Angles are degrees, entropic quantities bits.
struct ExperimentConfig {
  FamilyId family = FamilyId::Rho1;
  std::vector<double> c_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> alpha_list = {0.0, 0.1, 0.2, 0.3};
  std::optional<NoiseConfig> noise;
  MinimizerConfig minimizer;
  double total_intensity = 1.0;
  std::string records_path;  // when set, `tomo` ingests measured records

  void validate() const;
};

struct CurveRow {
  FamilyId family;
  double c = 0.0;
  double alpha = 0.0;
  double discord = 0.0;
  double classical_correlation = 0.0;
  double mutual_information = 0.0;
  double fidelity = 0.0;  // vs the unperturbed family member
  std::string error;      // per-point failure flag; empty on success
};

struct CurveResult {
  std::vector<CurveRow> rows;
  std::map<double, double> mean_fidelity_by_alpha;
};

struct TomoRow {
  double c = 0.0;
  std::vector<IntensityRecord> records;
  TomographyReport report;
  double discord = 0.0;
};

struct FitPoint {
  double c = 0.0;
  double discord_measured = 0.0;
  double discord_model = 0.0;
};

struct FitResult {
  double alpha_hat = 0.0;
  double mean_fidelity = 0.0;
  double residual_sse = 0.0;
  std::vector<FitPoint> points;
};

struct fit_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Noise parameters tuned so a simulated rho1 tomography run lands in
/// the mean-fidelity range the bench achieved (about 0.95).
NoiseConfig calibrated_noise_defaults();

/// Discord of perturb(family(f, c), alpha) for each grid point, plus
/// the mean fidelity per alpha over the c grid. Minimizer failures are
/// flagged per row, never abort the sweep.
CurveResult cmd_curve(const ExperimentConfig& cfg);

/// For each c: prepare the bench circuit, run it (noisy when configured),
/// simulate the 9 settings, reconstruct, and report fidelity vs the
/// analytic family member plus the discord of the reconstruction.
/// With records_path set, ingests measured intensities instead; the row
/// then carries c = NaN and no target fidelity.
std::vector<TomoRow> cmd_tomo(const ExperimentConfig& cfg);

/// Fit the identity-admixture weight: scan alpha over [0,1] in steps of
/// 0.002 then golden-section refine, minimizing the squared discord
/// residuals against the perturbed-family model.
FitResult cmd_fit(const std::vector<std::pair<double, double>>& points,
                  FamilyId family, const MinimizerConfig& minimizer = {});

/// CSV renderings; byte-stable for identical inputs.
std::string curve_csv(const CurveResult& result);
std::string tomo_csv(FamilyId family, const std::vector<TomoRow>& rows);

}  // namespace soxs
