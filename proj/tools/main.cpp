#include "soxs/experiment.hpp"
#include "soxs/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using nlohmann::json;
using namespace soxs;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  in >> j;
  return j;
}

ExperimentConfig parse_config(const json& j,
                              std::optional<std::uint64_t> seed_override) {
  ExperimentConfig cfg;
  if (j.contains("family"))
    cfg.family = family_from_string(j["family"].get<std::string>());
  if (j.contains("c_grid")) cfg.c_grid = j["c_grid"].get<std::vector<double>>();
  if (j.contains("alpha_list"))
    cfg.alpha_list = j["alpha_list"].get<std::vector<double>>();
  if (j.contains("noise")) {
    if (j["noise"].is_string() && j["noise"] == "calibrated")
      cfg.noise = calibrated_noise_defaults();
    else
      cfg.noise = noise_from_json(j["noise"]);
  }
  if (j.contains("minimizer")) cfg.minimizer = minimizer_from_json(j["minimizer"]);
  cfg.total_intensity = j.value("total_intensity", 1.0);
  cfg.records_path = j.value("records_path", std::string{});
  if (seed_override) {
    if (!cfg.noise) cfg.noise = NoiseConfig{};
    cfg.noise->seed = *seed_override;
  }
  cfg.validate();
  return cfg;
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

json curve_to_json(const CurveResult& result) {
  json rows = json::array();
  for (const auto& r : result.rows)
    rows.push_back({{"family", to_string(r.family)},
                    {"c", r.c},
                    {"alpha", r.alpha},
                    {"discord", r.discord},
                    {"classical_correlation", r.classical_correlation},
                    {"mutual_information", r.mutual_information},
                    {"fidelity", r.fidelity},
                    {"error", r.error}});
  json mean = json::object();
  for (const auto& [alpha, f] : result.mean_fidelity_by_alpha)
    mean[std::to_string(alpha)] = f;
  return {{"rows", rows}, {"mean_fidelity_by_alpha", mean}};
}

json tomo_to_json(FamilyId family, const std::vector<TomoRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json item = {{"family", to_string(family)},
                 {"records", to_json(r.records)},
                 {"report", to_json(r.report)},
                 {"discord", r.discord}};
    if (std::isfinite(r.c)) item["c"] = r.c;
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-orbit X-state simulator: discord sweeps, simulated "
               "36-intensity tomography, and fidelity-model fits"};
  app.require_subcommand(1);
  app.fallthrough();  // let global --config/--out/... follow the subcommand

  std::string config_path, out_path, format = "csv";
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_path, "output path (stdout when omitted)");
  app.add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "noise seed override");

  auto* cmd_curve_app = app.add_subcommand(
      "curve", "discord vs c for each identity-admixture weight alpha");
  auto* cmd_tomo_app = app.add_subcommand(
      "tomo", "simulated (or ingested) tomography runs with reconstruction");
  auto* cmd_fit_app =
      app.add_subcommand("fit", "fit the admixture weight to discord points");
  auto* cmd_state_app =
      app.add_subcommand("state", "print a family density matrix");
  std::string state_family = "rho1";
  double state_c = 1.0;
  cmd_state_app->add_option("--family", state_family, "rho1|rho2|rho3|werner");
  cmd_state_app->add_option("--c", state_c, "family weight in [0,1]");

  CLI11_PARSE(app, argc, argv);
  if (*seed_opt) seed = seed_value;

  try {
    if (cmd_state_app->parsed()) {
      const auto rho = soxs::family(family_from_string(state_family), state_c);
      write_output(out_path, soxs::to_json(rho).dump(2) + "\n");
      return 0;
    }

    const json cfg_json = config_path.empty() ? json::object()
                                              : load_json(config_path);
    const ExperimentConfig cfg = parse_config(cfg_json, seed);

    if (cmd_curve_app->parsed()) {
      const CurveResult result = cmd_curve(cfg);
      if (format == "json")
        write_output(out_path, curve_to_json(result).dump(2) + "\n");
      else
        write_output(out_path, curve_csv(result));
    } else if (cmd_tomo_app->parsed()) {
      const auto rows = cmd_tomo(cfg);
      if (format == "json")
        write_output(out_path, tomo_to_json(cfg.family, rows).dump(2) + "\n");
      else
        write_output(out_path, tomo_csv(cfg.family, rows));
    } else if (cmd_fit_app->parsed()) {
      if (!cfg_json.contains("points"))
        throw std::runtime_error("fit requires a \"points\" array of [c, discord]");
      std::vector<std::pair<double, double>> points;
      for (const auto& p : cfg_json["points"])
        points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
      const FitResult fit = cmd_fit(points, cfg.family, cfg.minimizer);
      json jfit = {{"alpha_hat", fit.alpha_hat},
                   {"mean_fidelity", fit.mean_fidelity},
                   {"residual_sse", fit.residual_sse}};
      json pts = json::array();
      for (const auto& p : fit.points)
        pts.push_back({{"c", p.c},
                       {"discord_measured", p.discord_measured},
                       {"discord_model", p.discord_model}});
      jfit["points"] = pts;
      write_output(out_path, jfit.dump(2) + "\n");
    }
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
