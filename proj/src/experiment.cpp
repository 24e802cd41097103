#include "soxs/experiment.hpp"

#include "soxs/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace soxs {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

double model_discord(FamilyId family, double c, double alpha,
                     const MinimizerConfig& minimizer) {
  return discord(perturb(soxs::family(family, c), alpha), minimizer).discord;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (c_grid.empty()) throw std::invalid_argument("c_grid is empty");
  if (!std::is_sorted(c_grid.begin(), c_grid.end()))
    throw std::invalid_argument("c_grid must be sorted");
  for (double c : c_grid)
    if (c < 0.0 || c > 1.0)
      throw std::invalid_argument("c_grid value out of [0,1]");
  for (double a : alpha_list)
    if (a < 0.0 || a > 1.0)
      throw std::invalid_argument("alpha out of [0,1]");
  if (total_intensity <= 0.0)
    throw std::invalid_argument("total_intensity must be positive");
}

NoiseConfig calibrated_noise_defaults() {
  NoiseConfig n;
  n.angle_jitter_sigma_deg = 0.5;
  n.depolarizing_strength = 0.025;
  n.intensity_noise_rel = 0.01;
  n.background_offset = 0.002;
  n.seed = 20240817;
  return n;
}

CurveResult cmd_curve(const ExperimentConfig& cfg) {
  cfg.validate();
  CurveResult out;
  std::map<double, std::pair<double, int>> fid_acc;
  for (double c : cfg.c_grid) {
    const DensityOperator base = family(cfg.family, c);
    for (double alpha : cfg.alpha_list) {
      CurveRow row;
      row.family = cfg.family;
      row.c = c;
      row.alpha = alpha;
      const DensityOperator rho = perturb(base, alpha);
      row.fidelity = fidelity(base, rho);
      try {
        const DiscordResult res = discord(rho, cfg.minimizer);
        row.discord = res.discord;
        row.classical_correlation = res.classical_correlation;
        row.mutual_information = res.mutual_information;
      } catch (const minimizer_failure& e) {
        row.error = e.what();
      }
      auto& [sum, count] = fid_acc[alpha];
      sum += row.fidelity;
      ++count;
      out.rows.push_back(std::move(row));
    }
  }
  for (const auto& [alpha, acc] : fid_acc)
    out.mean_fidelity_by_alpha[alpha] = acc.first / acc.second;
  return out;
}

std::vector<TomoRow> cmd_tomo(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<TomoRow> out;

  if (!cfg.records_path.empty()) {
    std::ifstream in(cfg.records_path);
    if (!in) throw std::runtime_error("cannot open " + cfg.records_path);
    nlohmann::json j;
    in >> j;
    TomoRow row;
    row.c = std::numeric_limits<double>::quiet_NaN();
    row.records = records_from_json(j);
    row.report = reconstruct(row.records);
    row.discord = discord(row.report.rho_physical, cfg.minimizer).discord;
    out.push_back(std::move(row));
    return out;
  }

  std::mt19937_64 rng(cfg.noise ? cfg.noise->seed : 0);
  for (double c : cfg.c_grid) {
    TomoRow row;
    row.c = c;
    const DensityOperator target = family(cfg.family, c);
    const Circuit circuit = prepare_family_circuit(cfg.family, c);
    const DensityOperator prepared =
        cfg.noise ? run_circuit(circuit, *cfg.noise, rng)
                  : run_circuit(circuit);
    for (const auto& setting : all_settings())
      row.records.push_back(
          cfg.noise ? simulate_ccd(prepared, setting, cfg.total_intensity,
                                   *cfg.noise, rng)
                    : simulate_ccd(prepared, setting, cfg.total_intensity));
    row.report = reconstruct(row.records, target);
    row.discord = discord(row.report.rho_physical, cfg.minimizer).discord;
    out.push_back(std::move(row));
  }
  return out;
}

FitResult cmd_fit(const std::vector<std::pair<double, double>>& points,
                  FamilyId family, const MinimizerConfig& minimizer) {
  if (points.size() < 3) throw fit_failure("need at least 3 points");
  for (const auto& [c, d] : points)
    if (c < 0.0 || c > 1.0) throw fit_failure("point c out of [0,1]");
  double lo = points.front().second, hi = points.front().second;
  for (const auto& [c, d] : points) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  if (hi - lo < 1e-12)
    throw fit_failure("degenerate input: all discord values equal");

  auto sse = [&](double alpha) {
    double total = 0.0;
    for (const auto& [c, measured] : points) {
      const double model = model_discord(family, c, alpha, minimizer);
      total += (measured - model) * (measured - model);
    }
    return total;
  };

  const double step = 0.002;
  double best_alpha = 0.0, best_sse = std::numeric_limits<double>::infinity();
  for (int k = 0; k * step <= 1.0 + 1e-12; ++k) {
    const double alpha = std::min(k * step, 1.0);
    const double v = sse(alpha);
    if (v < best_sse) {
      best_sse = v;
      best_alpha = alpha;
    }
  }

  // Golden-section refinement in the bracketing interval.
  double a = std::max(best_alpha - step, 0.0);
  double b = std::min(best_alpha + step, 1.0);
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = sse(x1), f2 = sse(x2);
  for (int it = 0; it < 40 && b - a > 1e-6; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = sse(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = sse(x2);
    }
  }
  const double mid = 0.5 * (a + b);
  if (sse(mid) < best_sse) best_alpha = mid;

  FitResult out;
  out.alpha_hat = best_alpha;
  out.residual_sse = sse(best_alpha);
  double fid_sum = 0.0;
  for (const auto& [c, measured] : points) {
    FitPoint p;
    p.c = c;
    p.discord_measured = measured;
    p.discord_model = model_discord(family, c, best_alpha, minimizer);
    out.points.push_back(p);
    const DensityOperator base = soxs::family(family, c);
    fid_sum += fidelity(base, perturb(base, best_alpha));
  }
  out.mean_fidelity = fid_sum / points.size();
  return out;
}

std::string curve_csv(const CurveResult& result) {
  std::ostringstream os;
  os << "family,c,alpha,discord,classical_correlation,mutual_information,"
        "fidelity,error\n";
  for (const auto& r : result.rows)
    os << to_string(r.family) << ',' << fmt(r.c) << ',' << fmt(r.alpha) << ','
       << fmt(r.discord) << ',' << fmt(r.classical_correlation) << ','
       << fmt(r.mutual_information) << ',' << fmt(r.fidelity) << ','
       << r.error << '\n';
  return os.str();
}

std::string tomo_csv(FamilyId family, const std::vector<TomoRow>& rows) {
  std::ostringstream os;
  os << "family,c,fidelity,discord,negative_eigenvalue_mass\n";
  for (const auto& r : rows)
    os << to_string(family) << ',' << fmt(r.c) << ','
       << (r.report.fidelity_vs_target ? fmt(*r.report.fidelity_vs_target)
                                       : std::string())
       << ',' << fmt(r.discord) << ','
       << fmt(r.report.negative_eigenvalue_mass) << '\n';
  return os.str();
}

}  // namespace soxs
