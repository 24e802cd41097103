#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

// Two-qubit state algebra over the spin-orbit basis {Hh, Hv, Vh, Vv}.
// Qubit A is polarization (H = 0, V = 1), qubit B the first-order
// transverse mode (h = 0, v = 1); basis index = 2*pol + mode.
// All entropic quantities are in bits.

namespace soxs {

using complexd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

/// Thrown when an input fails a state-validity check.
struct invalid_state : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Normalized 4-amplitude pure state (a_Hh, a_Hv, a_Vh, a_Vv).
struct PureState {
  Vec4 a;

  double norm() const { return a.norm(); }
};

/// Basis kets.
PureState ket(int index);

/// 4x4 Hermitian, unit-trace, PSD matrix over {Hh, Hv, Vh, Vv}.
struct DensityOperator {
  Mat4 m;

  /// Validates Hermiticity (1e-10), unit trace (1e-10) and
  /// PSD up to -1e-8 eigenvalue slack; throws invalid_state otherwise.
  static DensityOperator validated(const Mat4& m);
};

/// Real 4x4 table of Pauli expectation values S_ij = Tr[rho sigma_i x sigma_j],
/// i = polarization index, j = mode index. S_00 = 1 for a normalized state.
/// Sign conventions: sigma_3 diagonal in {H,V}/{h,v} with +1 for H, h;
/// sigma_1 = +1 for D, d; sigma_2 = +1 for R, r.
struct StokesTensor {
  Eigen::Matrix4d s;
};

enum class Subsystem { A, B };

/// Single-qubit Pauli matrix, index 0..3 (identity, X, Y, Z).
const Mat2& pauli(int i);

/// |psi><psi|. Throws if the input norm deviates from 1 by more than 1e-6.
DensityOperator density_from_pure(const PureState& psi);

/// S(rho) = -sum lambda log2 lambda, in bits. Eigenvalues in [-1e-8, 0)
/// are clipped to zero; anything below -1e-6 is an invalid_state.
double von_neumann_entropy(const DensityOperator& rho);

/// Entropy in bits of a (possibly unnormalized) Hermitian 2x2 block with
/// trace p: returns -sum mu log2(mu/p) where mu are the eigenvalues.
/// Returns 0 when p < 1e-12. Closed form, no solver.
double block_entropy(const Mat2& block);

/// Entropy in bits of a normalized 2x2 density matrix.
double von_neumann_entropy_2x2(const Mat2& rho);

/// Reduce to the kept subsystem; 2x2 Hermitian unit-trace output.
Mat2 partial_trace(const DensityOperator& rho, Subsystem keep);

/// Uhlmann fidelity [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2 in [0, 1].
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

/// S_ij = Tr[rho (sigma_i x sigma_j)].
StokesTensor pauli_expand(const DensityOperator& rho);

/// rho = (1/4) sum_ij S_ij sigma_i x sigma_j. Hermitian and trace one,
/// but not necessarily PSD; callers project before treating the result
/// as a physical state.
Mat4 pauli_assemble(const StokesTensor& s);

}  // namespace soxs
