#pragma once

#include <complex>
#include <string>
#include <vector>

namespace pondera {

/// Parameters of a driven cavity with one movable end mirror and
/// `mode_count` symmetrically driven optical modes. SI units throughout;
/// `detuning` is the dimensionless overall detuning (in units of gamma_c)
/// that already includes the radiation-pressure shift.
struct PhysicalParams {
  int mode_count = 2;
  double omega_m = 0.0;        // mechanical frequency, rad/s
  double omega_0 = 0.0;        // drive frequency, rad/s
  double mass = 0.0;           // kg
  double cavity_length = 0.0;  // m
  double gamma_m = 0.0;        // mechanical damping rate, 1/s
  double gamma_c = 0.0;        // cavity input-output rate, 1/s
  double input_power = 0.0;    // W per mode
  double temperature = 0.0;    // K
  double detuning = 0.0;

  /// Reference experimental set: omega_m = 1e6 /s, omega_0 = 1e15 /s,
  /// m = 0.1 g, L = 1 mm, gamma_m = 1 /s, gamma_c = 1e6 /s, 13 mW per mode.
  /// Two modes, zero detuning, zero temperature.
  static PhysicalParams table_one();

  /// Human-readable list of violated invariants; empty when valid.
  std::vector<std::string> problems() const;
  /// Throws InvalidParameters when problems() is non-empty.
  void validate() const;
  /// True when omega_m exceeds 1% of the free spectral range c/(2L), where
  /// the single-mode adiabatic treatment becomes questionable.
  bool outside_adiabatic_regime() const;
};

/// Classical working point around which the dynamics is linearized.
struct SteadyState {
  double x = 0.0;            // mirror displacement, m
  double y = 0.0;            // mirror momentum, always 0
  double alpha = 0.0;        // real intracavity amplitude, |alpha|^2 = photons
  double alpha_in_sq = 0.0;  // input photon flux per mode, 1/s
  double coupling = 0.0;     // optomechanical coupling G, 1/(m s)

  double alpha_sq() const { return alpha * alpha; }
};

struct BistableBranch {
  double x = 0.0;
  double detuning = 0.0;
  double alpha_sq = 0.0;
};

double derive_coupling(const PhysicalParams& params);
double input_amplitude_sq(const PhysicalParams& params);

/// Steady state for a detuning that is given directly in `params`.
SteadyState steady_state_from_detuning(const PhysicalParams& params);

/// All real self-consistent working points for a bare detuning
/// delta_0 = omega_0 - omega_c (rad/s). The detuning stored in `params` is
/// ignored. Branches are sorted by ascending intracavity photon number.
std::vector<BistableBranch> solve_bistability(const PhysicalParams& params,
                                              double bare_detuning);

/// Relative residual of the intracavity-intensity cubic at `alpha_sq`:
/// |p(n)| divided by the sum of the magnitudes of its monomials.
double bistability_residual(const PhysicalParams& params, double bare_detuning,
                            double alpha_sq);

/// chi(omega) = 1 / (m (omega_m^2 - omega^2 + 2 i gamma_m omega)).
std::complex<double> mirror_susceptibility(double omega,
                                           const PhysicalParams& params);

/// Thermal force spectrum: the coefficient of delta(omega + omega') in the
/// frequency-domain Brownian force correlation,
///   S(omega) = {1 + coth(hbar omega / 2 k_B T)} (m gamma_m hbar / pi) omega.
/// T = 0 and omega = 0 are evaluated through their analytic limits.
double thermal_noise_psd(double omega, const PhysicalParams& params);

/// <xi(omega) xi(-omega)> for the transform convention of the quadrature
/// equations (i omega v = M v + ...), i.e. 2 pi S(-omega). This is the
/// pairing under which the output fields keep canonical commutators.
double force_noise_correlation(double omega, const PhysicalParams& params);

}  // namespace pondera
