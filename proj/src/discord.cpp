#include "soxs/discord.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace soxs {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Conditional entropy for |b> = (cb, e^{i phi} sb) given the reduced
// state of A. Closed-form 2x2 spectra only; this sits in the hot loop
// of the grid scans.
double ce_fast(const Mat4& rho, const Mat2& rho_a, double cb, double sb,
               double cphi, double sphi) {
  const complexd v0(cb, 0.0);
  const complexd v1(sb * cphi, sb * sphi);
  const complexd c0 = std::conj(v0), c1 = std::conj(v1);
  Mat2 m0;
  for (int a = 0; a < 2; ++a)
    for (int ap = a; ap < 2; ++ap) {
      const complexd val = c0 * (rho(2 * a, 2 * ap) * v0 + rho(2 * a, 2 * ap + 1) * v1) +
                           c1 * (rho(2 * a + 1, 2 * ap) * v0 + rho(2 * a + 1, 2 * ap + 1) * v1);
      m0(a, ap) = val;
      m0(ap, a) = std::conj(val);
    }
  const Mat2 m1 = rho_a - m0;
  return block_entropy(m0) + block_entropy(m1);
}

struct GridScan {
  double min_ce;
  double theta;
  double phi;
  std::int64_t evals;
};

GridScan scan(const Mat4& rho, const Mat2& rho_a, int n_theta, int n_phi,
              bool inclusive_theta) {
  GridScan best{1e300, 0.0, 0.0, 0};
  const int ti_max = inclusive_theta ? n_theta : n_theta - 1;
  const double dtheta = inclusive_theta ? kHalfPi / n_theta
                                        : kHalfPi / (n_theta - 1);
  for (int i = 0; i <= ti_max; ++i) {
    const double theta = i * dtheta;
    const double cb = std::cos(theta), sb = std::sin(theta);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = kTwoPi * j / n_phi;
      const double ce =
          ce_fast(rho, rho_a, cb, sb, std::cos(phi), std::sin(phi));
      ++best.evals;
      if (ce < best.min_ce) {
        best.min_ce = ce;
        best.theta = theta;
        best.phi = phi;
      }
    }
  }
  return best;
}

}  // namespace

double conditional_entropy(const DensityOperator& rho,
                           const ProjectivePair& m) {
  const Mat2 rho_a = partial_trace(rho, Subsystem::A);
  return ce_fast(rho.m, rho_a, std::cos(m.theta), std::sin(m.theta),
                 std::cos(m.phi), std::sin(m.phi));
}

double mutual_information(const DensityOperator& rho) {
  const double sa = block_entropy(partial_trace(rho, Subsystem::A));
  const double sb = block_entropy(partial_trace(rho, Subsystem::B));
  return sa + sb - von_neumann_entropy(rho);
}

ClassicalCorrelation classical_correlation(const DensityOperator& rho,
                                           const MinimizerConfig& cfg) {
  if (cfg.n_theta < 16 || cfg.n_phi < 32)
    throw std::invalid_argument("minimizer grid too coarse");
  if (cfg.refine_tolerance <= 0.0)
    throw std::invalid_argument("refine_tolerance must be positive");

  const Mat2 rho_a = partial_trace(rho, Subsystem::A);
  GridScan best = scan(rho.m, rho_a, cfg.n_theta, cfg.n_phi, false);

  // Pattern search from the best grid point; step starts at one grid
  // spacing and halves whenever no axis move improves.
  auto eval = [&](double theta, double phi) {
    ++best.evals;
    return ce_fast(rho.m, rho_a, std::cos(theta), std::sin(theta),
                   std::cos(phi), std::sin(phi));
  };
  double step_t = kHalfPi / (cfg.n_theta - 1);
  double step_p = kTwoPi / cfg.n_phi;
  double theta = best.theta, phi = best.phi, value = best.min_ce;
  for (int it = 0; it < cfg.refine_iterations; ++it) {
    bool moved = false;
    const double cand_t[2] = {std::clamp(theta - step_t, 0.0, kHalfPi),
                              std::clamp(theta + step_t, 0.0, kHalfPi)};
    for (double t : cand_t) {
      const double v = eval(t, phi);
      if (v < value - 1e-18) {
        value = v;
        theta = t;
        moved = true;
      }
    }
    const double cand_p[2] = {phi - step_p, phi + step_p};
    for (double p : cand_p) {
      const double v = eval(theta, p);
      if (v < value - 1e-18) {
        value = v;
        phi = p;
        moved = true;
      }
    }
    if (!moved) {
      if (step_t < cfg.refine_tolerance && step_p < cfg.refine_tolerance) break;
      step_t *= 0.5;
      step_p *= 0.5;
    }
  }

  ClassicalCorrelation out;
  out.value = std::max(block_entropy(rho_a) - value, 0.0);
  out.argmin = ProjectivePair{theta,
                              phi < 0 ? phi + kTwoPi
                                      : (phi >= kTwoPi ? phi - kTwoPi : phi)};
  out.evals = best.evals;
  return out;
}

DiscordResult discord(const DensityOperator& rho, const MinimizerConfig& cfg) {
  const ClassicalCorrelation cc = classical_correlation(rho, cfg);
  DiscordResult out;
  out.mutual_information = mutual_information(rho);
  out.classical_correlation = cc.value;
  out.argmin = cc.argmin;
  out.minimizer_evals = cc.evals;
  double q = out.mutual_information - out.classical_correlation;
  if (q < -1e-8)
    throw minimizer_failure("discord " + std::to_string(q) +
                            ": measurement optimum missed");
  out.discord = std::max(q, 0.0);
  return out;
}

double discord_bruteforce(const DensityOperator& rho, int n_theta, int n_phi) {
  if (static_cast<std::int64_t>(n_theta) * n_phi > 10'000'000)
    throw std::invalid_argument("brute-force grid exceeds 1e7 points");
  if (n_theta < 1 || n_phi < 1)
    throw std::invalid_argument("brute-force grid must be nonempty");
  const Mat2 rho_a = partial_trace(rho, Subsystem::A);
  const GridScan best = scan(rho.m, rho_a, n_theta, n_phi, true);
  const double sb = block_entropy(partial_trace(rho, Subsystem::B));
  const double q = sb - von_neumann_entropy(rho) + best.min_ce;
  return std::max(q, 0.0);
}

}  // namespace soxs
