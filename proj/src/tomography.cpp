#include "soxs/tomography.hpp"

#include <cmath>
#include <stdexcept>

namespace soxs {

namespace {

// Eigenvectors of sigma_b, columns ordered (+1, -1).
Mat2 basis_vectors(int b) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (b) {
    case 1:  // D/A
      return (Mat2() << r, r, r, -r).finished();
    case 2:  // R/L
      return (Mat2() << r, r, complexd(0, r), complexd(0, -r)).finished();
    case 3:  // H/V
      return Mat2::Identity();
    default:
      throw std::invalid_argument("basis index must be 1, 2 or 3");
  }
}

std::array<double, 4> normalized(const IntensityRecord& rec) {
  double total = 0.0;
  for (double x : rec.intensities) {
    if (x < 0.0) throw std::invalid_argument("negative intensity");
    total += x;
  }
  if (total <= 0.0)
    throw std::invalid_argument("all-zero intensity record for setting (" +
                                std::to_string(rec.setting.pol_basis) + "," +
                                std::to_string(rec.setting.mode_basis) + ")");
  return {rec.intensities[0] / total, rec.intensities[1] / total,
          rec.intensities[2] / total, rec.intensities[3] / total};
}

}  // namespace

std::vector<MeasurementSetting> all_settings() {
  std::vector<MeasurementSetting> out;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) out.push_back({i, j});
  return out;
}

Eigen::Vector4d forward_probabilities(const DensityOperator& rho,
                                      const MeasurementSetting& setting) {
  const Mat2 u = basis_vectors(setting.pol_basis);
  const Mat2 w = basis_vectors(setting.mode_basis);
  Eigen::Vector4d p;
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) {
      Vec4 v;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) v(2 * a + b) = u(a, s) * w(b, t);
      p(2 * s + t) = std::real(v.dot(rho.m * v));
    }
  return p;
}

StokesTensor stokes_from_records(const std::vector<IntensityRecord>& records) {
  std::array<std::array<bool, 4>, 4> seen{};
  std::array<std::array<std::array<double, 4>, 4>, 4> prob{};
  for (const auto& rec : records) {
    const int i = rec.setting.pol_basis, j = rec.setting.mode_basis;
    if (i < 1 || i > 3 || j < 1 || j > 3)
      throw std::invalid_argument("bad measurement setting");
    if (seen[i][j])
      throw std::invalid_argument("duplicate record for setting (" +
                                  std::to_string(i) + "," + std::to_string(j) +
                                  ")");
    seen[i][j] = true;
    prob[i][j] = normalized(rec);
  }
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      if (!seen[i][j])
        throw std::invalid_argument("missing record for setting (" +
                                    std::to_string(i) + "," +
                                    std::to_string(j) + ")");

  StokesTensor out;
  out.s.setZero();
  out.s(0, 0) = 1.0;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const auto& p = prob[i][j];
      out.s(i, j) = p[0] - p[1] - p[2] + p[3];
    }
  for (int i = 1; i <= 3; ++i) {
    const auto& p = prob[i][3];
    out.s(i, 0) = p[0] + p[1] - p[2] - p[3];
  }
  for (int j = 1; j <= 3; ++j) {
    const auto& p = prob[3][j];
    out.s(0, j) = p[0] - p[1] + p[2] - p[3];
  }
  return out;
}

DensityOperator project_physical(const Mat4& rho_raw) {
  if ((rho_raw - rho_raw.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("raw matrix not Hermitian");
  if (std::abs(rho_raw.trace() - complexd(1.0)) > 1e-8)
    throw std::invalid_argument("raw matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Mat4> es(rho_raw);
  Eigen::Vector4d lam = es.eigenvalues().cwiseMax(0.0);
  const double total = lam.sum();
  Mat4 m = es.eigenvectors() * (lam / total).asDiagonal() *
           es.eigenvectors().adjoint();
  m = 0.5 * (m + m.adjoint().eval());
  return DensityOperator{m};
}

TomographyReport reconstruct(const std::vector<IntensityRecord>& records,
                             const std::optional<DensityOperator>& target) {
  TomographyReport rep;
  rep.rho_raw = pauli_assemble(stokes_from_records(records));
  rep.rho_physical = project_physical(rep.rho_raw);
  Eigen::SelfAdjointEigenSolver<Mat4> es(rep.rho_raw, Eigen::EigenvaluesOnly);
  rep.negative_eigenvalue_mass =
      std::max(-es.eigenvalues().cwiseMin(0.0).sum(), 0.0);
  if (target) rep.fidelity_vs_target = fidelity(*target, rep.rho_physical);
  return rep;
}

}  // namespace soxs
