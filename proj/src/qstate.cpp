#include "soxs/qstate.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

namespace soxs {

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdSlack = 1e-8;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

PureState ket(int index) {
  PureState psi;
  psi.a.setZero();
  psi.a(index) = 1.0;
  return psi;
}

DensityOperator DensityOperator::validated(const Mat4& m) {
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermTol)
    throw invalid_state("density operator not Hermitian (deviation " +
                        std::to_string(herm) + ")");
  const double tr = std::abs(m.trace() - complexd(1.0));
  if (tr > kTraceTol)
    throw invalid_state("density operator trace deviates from 1 by " +
                        std::to_string(tr));
  Eigen::SelfAdjointEigenSolver<Mat4> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdSlack)
    throw invalid_state("density operator has eigenvalue " +
                        std::to_string(es.eigenvalues().minCoeff()));
  return DensityOperator{m};
}

const Mat2& pauli(int i) {
  static const Mat2 sigma[4] = {
      Mat2::Identity(),
      (Mat2() << 0, 1, 1, 0).finished(),
      (Mat2() << 0, complexd(0, -1), complexd(0, 1), 0).finished(),
      (Mat2() << 1, 0, 0, -1).finished()};
  return sigma[i];
}

DensityOperator density_from_pure(const PureState& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-6)
    throw invalid_state("pure state not normalized: norm = " +
                        std::to_string(psi.norm()));
  const Vec4 a = psi.a / psi.norm();
  return DensityOperator{a * a.adjoint()};
}

double von_neumann_entropy(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(rho.m, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int k = 0; k < 4; ++k) {
    double lam = es.eigenvalues()(k);
    if (lam < -1e-6)
      throw invalid_state("entropy of non-PSD state (eigenvalue " +
                          std::to_string(lam) + ")");
    s -= xlog2x(std::max(lam, 0.0));
  }
  return s;
}

double block_entropy(const Mat2& block) {
  const double p = block(0, 0).real() + block(1, 1).real();
  if (p < 1e-12) return 0.0;
  // Hermitian 2x2 eigenvalues from trace and determinant.
  const double det =
      (block(0, 0) * block(1, 1) - block(0, 1) * block(1, 0)).real();
  const double disc = std::sqrt(std::max(p * p - 4.0 * det, 0.0));
  const double l0 = std::max(0.5 * (p + disc), 0.0);
  const double l1 = std::max(0.5 * (p - disc), 0.0);
  return -(xlog2x(l0) + xlog2x(l1)) + xlog2x(p);
}

double von_neumann_entropy_2x2(const Mat2& rho) { return block_entropy(rho); }

Mat2 partial_trace(const DensityOperator& rho, Subsystem keep) {
  Mat2 out = Mat2::Zero();
  if (keep == Subsystem::A) {
    for (int a = 0; a < 2; ++a)
      for (int ap = 0; ap < 2; ++ap)
        for (int b = 0; b < 2; ++b) out(a, ap) += rho.m(2 * a + b, 2 * ap + b);
  } else {
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp)
        for (int a = 0; a < 2; ++a) out(b, bp) += rho.m(2 * a + b, 2 * a + bp);
  }
  return out;
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(rho.m);
  if (es.eigenvalues().minCoeff() < -1e-6)
    throw invalid_state("fidelity of non-PSD state");
  Mat4 sqrt_rho = es.eigenvectors() *
                  es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                  es.eigenvectors().adjoint();
  Mat4 inner = sqrt_rho * sigma.m * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Mat4> es2(inner, Eigen::EigenvaluesOnly);
  if (es2.eigenvalues().minCoeff() < -1e-6)
    throw invalid_state("fidelity of non-PSD state");
  const double tr = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::min(tr * tr, 1.0);
}

StokesTensor pauli_expand(const DensityOperator& rho) {
  StokesTensor out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Mat4 op = Eigen::kroneckerProduct(pauli(i), pauli(j)).eval();
      out.s(i, j) = (rho.m * op).trace().real();
    }
  return out;
}

Mat4 pauli_assemble(const StokesTensor& s) {
  Mat4 out = Mat4::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out += s.s(i, j) * Eigen::kroneckerProduct(pauli(i), pauli(j)).eval();
  return 0.25 * out;
}

}  // namespace soxs
