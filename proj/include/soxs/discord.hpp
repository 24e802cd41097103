#pragma once

#include "soxs/qstate.hpp"

#include <cstdint>

namespace soxs {

/// Projective measurement pair on subsystem B (transverse mode):
/// B_0 = |b><b| with |b> = cos(theta)|0> + e^{i phi} sin(theta)|1>,
/// B_1 = I - B_0. theta in [0, pi/2] covers all distinct pairs.
struct ProjectivePair {
  double theta = 0.0;
  double phi = 0.0;
};

struct MinimizerConfig {
  int n_theta = 64;
  int n_phi = 128;
  int refine_iterations = 200;
  double refine_tolerance = 1e-9;  // bits
};

struct DiscordResult {
  double discord = 0.0;
  double classical_correlation = 0.0;
  double mutual_information = 0.0;
  ProjectivePair argmin;
  std::int64_t minimizer_evals = 0;
};

/// Thrown when the minimizer produced a discord below -1e-8, i.e. the
/// optimum over measurements was missed.
struct minimizer_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Measurement-induced conditional entropy
/// p_0 S(rho_0) + p_1 S(rho_1), in bits. Outcomes with probability
/// below 1e-12 contribute zero.
double conditional_entropy(const DensityOperator& rho,
                           const ProjectivePair& m);

/// S(rho_A) + S(rho_B) - S(rho_AB), in bits.
double mutual_information(const DensityOperator& rho);

/// C_C = S(rho_A) - min over projective pairs of the conditional
/// entropy; coarse grid then local pattern-search refinement.
struct ClassicalCorrelation {
  double value = 0.0;
  ProjectivePair argmin;
  std::int64_t evals = 0;
};
ClassicalCorrelation classical_correlation(const DensityOperator& rho,
                                           const MinimizerConfig& cfg = {});

/// Entropic discord Q = I - C_C. Tiny negatives in [-1e-8, 0) are
/// clamped to zero; anything lower raises minimizer_failure.
DiscordResult discord(const DensityOperator& rho,
                      const MinimizerConfig& cfg = {});

/// Pure-grid oracle: minimum of the conditional entropy over
/// theta_i = (pi/2) i/n_theta (i = 0..n_theta inclusive) and
/// phi_j = 2 pi j/n_phi, no refinement. Doubling n_theta and n_phi
/// refines the grid, so the value is monotone non-increasing under
/// doubling. Throws when n_theta*n_phi exceeds 1e7.
double discord_bruteforce(const DensityOperator& rho, int n_theta, int n_phi);

}  // namespace soxs
