#pragma once

#include <complex>

#include <Eigen/Dense>

#include "pondera/model.hpp"

namespace pondera {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using Block = Eigen::Matrix2d;

/// Condition number of L(omega) above which a frequency is rejected.
inline constexpr double kConditionBound = 1e12;
/// Tolerance (relative to the magnitude of the matrices involved, floored
/// at 1) for the commutator, residue and block-structure checks.
inline constexpr double kStructureTolerance = 1e-9;

/// Linear response of the 2N quadratures (X1, Y1, ..., XN, YN) at one
/// frequency: i omega v = M v + sqrt(gamma_c) v_in + s xi.
struct FrequencyResponse {
  double omega = 0.0;
  CMatrix drift;           // M(omega)
  CMatrix propagator;      // L(omega) = i omega I - M(omega)
  CMatrix propagator_inv;  // L^-1(omega)
  CMatrix reflection;      // K(omega) = gamma_c L^-1 - I
  CVector force_coupling;  // s(omega)
  std::complex<double> chi;
};

FrequencyResponse build_drift(double omega, const PhysicalParams& params,
                              const SteadyState& steady);

/// <v_in(omega) v_in(-omega)^T>: 2x2 blocks [[1/2, i/2], [-i/2, 1/2]].
CMatrix input_noise_correlation(int mode_count);

/// Block-diagonal symplectic form with 2x2 blocks [[0, 1], [-1, 0]].
RMatrix symplectic_form(int mode_count);

/// U(omega) = <v_out(omega) v_out(-omega)^T>. `at` is the response at
/// omega and `mirrored` the response at -omega.
CMatrix unsymmetrized_output_correlations(const FrequencyResponse& at,
                                          const FrequencyResponse& mirrored,
                                          const PhysicalParams& params);

/// c(omega) from the commutator matrix U(omega) - U(-omega)^T, which must be
/// i c(omega) times the symplectic form. Throws ConsistencyError otherwise.
double commutator_scale(const CMatrix& u_plus, const CMatrix& u_minus);
double commutator_scale(double omega, const PhysicalParams& params,
                        const SteadyState& steady);

/// Normalized symmetric covariance of the output quadratures at one
/// frequency. A is the diagonal block of mode 1, C the (1, 2) block.
struct CovarianceMatrix {
  double omega = 0.0;
  RMatrix V;
  double c_omega = 1.0;
  Block A = Block::Zero();
  Block C = Block::Zero();

  int mode_count() const { return static_cast<int>(V.rows() / 2); }
  Block block(int row, int col) const {
    return V.block<2, 2>(2 * row, 2 * col);
  }
};

CovarianceMatrix covariance(double omega, const PhysicalParams& params,
                            const SteadyState& steady);

/// Largest deviation from the symmetric-driving structure: all diagonal
/// blocks equal, all upper off-diagonal blocks equal, V symmetric.
double block_structure_deviation(const RMatrix& V);
/// Throws BlockStructureError when the deviation exceeds the tolerance.
void require_block_structure(const RMatrix& V);

/// Smallest eigenvalue of V + (i/2) Omega; non-negative for physical states.
double uncertainty_min_eigenvalue(const RMatrix& V);

}  // namespace pondera
