#pragma once

#include <optional>

#include "pondera/spectra.hpp"

namespace pondera {

/// Best fidelity for coherent states without shared entanglement.
inline constexpr double kClassicalBound = 0.5;
/// Optimal symmetric 1 -> 2 cloning fidelity for coherent states.
inline constexpr double kCloningBound = 2.0 / 3.0;

/// Gaussian state to be transferred, described by its 2x2 correlation
/// matrix D (characteristic function exp(-lambda D lambda^T / 4)).
struct GaussianInput {
  Block D = 0.5 * Block::Identity();

  static GaussianInput coherent() { return {}; }
  /// Throws std::invalid_argument unless D is symmetric positive definite.
  void validate() const;
};

/// Unit-gain teleportation fidelity through a two-mode channel with
/// diagonal block A and sender/receiver block C:
///   F = 1 / sqrt(det(2D + R A R + R C + C^T R + A)).
double teleport_fidelity(const Block& A, const Block& C, const Block& D);

/// Fidelity at either receiver of 1 -> 2 telecloning through a
/// mode-symmetric three-mode channel. Only the sender's diagonal block and
/// one sender/receiver block enter.
double teleclone_fidelity(const RMatrix& V3, const Block& D);

struct QuadratureSpec {
  double radius_sigmas = 8.0;  // truncation radius per principal axis
  int points_per_sigma = 4;
  double convergence_tolerance = 1e-9;
};

/// Direct numerical evaluation of the fidelity integral
///   F = (1/4pi) Int d^2 lambda exp[-lambda D lambda^T / 2]
///                      exp[-u V u^T / 4],  u = (l1, -l2, l1, l2),
/// on a tensor trapezoid grid aligned with the integrand's principal axes.
/// Throws QuadratureError if the quadratic form is not positive definite or
/// doubling the radius moves the result by more than the tolerance.
double fidelity_quadrature_oracle(const Block& A, const Block& C, const Block& D,
                                  const QuadratureSpec& spec = {});

struct TransferReport {
  double omega = 0.0;
  std::optional<double> f_tele;
  std::optional<double> f_clone;
  bool beats_classical_tele = false;
  bool beats_classical_clone = false;
  bool within_cloning_bound = true;
};

TransferReport evaluate_transfer(const CovarianceMatrix& cov,
                                 const GaussianInput& input, bool teleport,
                                 bool teleclone);

}  // namespace pondera
