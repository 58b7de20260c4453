#include "pondera/check.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "pondera/config.hpp"
#include "pondera/model.hpp"
#include "pondera/constants.hpp"
#include "pondera/errors.hpp"
#include "pondera/sweep.hpp"

namespace pondera {

namespace {

template <typename Fn>
CheckResult guarded(std::string name, Fn&& body) {
  CheckResult result{std::move(name), false, {}};
  try {
    std::ostringstream detail;
    result.passed = body(detail);
    result.detail = detail.str();
  } catch (const std::exception& e) {
    result.detail = std::string("exception: ") + e.what();
  }
  return result;
}

CheckResult vacuum_identities() {
  return guarded("vacuum identities", [](std::ostream& detail) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> omega(0.0, 3e6), temp(0.0, 300.0),
        delta(-1.0, 1.0);
    double worst_v = 0.0, worst_e = 0.0, worst_f = 0.0;
    for (int i = 0; i < 20; ++i) {
      PhysicalParams p = PhysicalParams::table_one();
      p.input_power = 0.0;
      p.mode_count = 3;
      p.temperature = temp(rng);
      p.detuning = delta(rng);
      const auto cov = covariance(omega(rng), p, steady_state_from_detuning(p));
      worst_v = std::max(worst_v, (cov.V - 0.5 * RMatrix::Identity(6, 6)).cwiseAbs().maxCoeff());
      for (double e : {simon_marker(cov.A, cov.C), product_marker(cov.A, cov.C),
                       sum_marker(cov.A, cov.C)}) {
        worst_e = std::max(worst_e, std::abs(e - 1.0));
      }
      const Block d = GaussianInput::coherent().D;
      worst_f = std::max(worst_f, std::abs(teleport_fidelity(cov.A, cov.C, d) - 0.5));
      worst_f = std::max(worst_f, std::abs(teleclone_fidelity(cov.V, d) - 0.5));
    }
    detail << "max |V - I/2| = " << worst_v << ", max |E - 1| = " << worst_e
           << ", max |F - 1/2| = " << worst_f;
    return worst_v < 1e-9 && worst_e < 1e-9 && worst_f < 1e-12;
  });
}

CheckResult thermal_limits() {
  return guarded("thermal spectrum limits", [](std::ostream& detail) {
    PhysicalParams p = PhysicalParams::table_one();
    p.temperature = 300.0;
    const double limit = 2.0 * p.mass * p.gamma_m * constants::boltzmann * 300.0 / constants::pi;
    const double near = thermal_noise_psd(1e-3, p);
    double worst_commutator = 0.0;
    for (double t : {0.0, 1.0, 300.0}) {
      p.temperature = t;
      const double w = 1e6;
      const double expected = 2.0 * p.mass * p.gamma_m * constants::hbar * w / constants::pi;
      worst_commutator = std::max(
          worst_commutator,
          std::abs(thermal_noise_psd(w, p) - thermal_noise_psd(-w, p) - expected) /
                        thermal_noise_psd(w, p));
    }
    detail << "omega -> 0 relative gap " << std::abs(near - limit) / limit
           << ", antisymmetric part error relative to S " << worst_commutator;
    return std::abs(near - limit) / limit < 1e-6 && worst_commutator < 1e-12;
  });
}

CheckResult sweep_invariants() {
  return guarded("commutator and physicality on coarse fig4/fig6 sweeps", [](std::ostream& detail) {
    double worst_c = 0.0, worst_eig = 0.0;
    int errors = 0;
    for (Preset preset : {Preset::Fig4, Preset::Fig6}) {
      auto config = preset_config(preset);
      config.grid.points = 41;
      for (const auto& row : run_sweep(config)) {
        if (!row.ok()) {
          ++errors;
          continue;
        }
        worst_c = std::max(worst_c, std::abs(*row.c_omega - 1.0));
        worst_eig = std::min(worst_eig, *row.min_uncertainty_eigenvalue);
      }
    }
    detail << errors << " errored points, max |c - 1| = " << worst_c
           << ", min eigenvalue of V + i Omega / 2 = " << worst_eig;
    return errors == 0 && worst_c < 1e-9 && worst_eig >= -1e-9;
  });
}

CheckResult bistability() {
  return guarded("bistability residuals", [](std::ostream& detail) {
    PhysicalParams p = PhysicalParams::table_one();
    p.input_power = 0.13;
    const double bare = -5.0 * p.gamma_c;
    const auto branches = solve_bistability(p, bare);
    double worst = 0.0;
    for (const auto& b : branches) {
      worst = std::max(worst, bistability_residual(p, bare, b.alpha_sq));
    }
    detail << branches.size() << " branches, worst relative residual " << worst;
    return branches.size() == 3 && worst < 1e-9;
  });
}

CheckResult oracle_agreement() {
  return guarded("closed-form fidelity vs quadrature", [](std::ostream& detail) {
    PhysicalParams p = PhysicalParams::table_one();
    p.detuning = 0.1;
    const auto steady = steady_state_from_detuning(p);
    const Block d = GaussianInput::coherent().D;
    double worst = 0.0;
    for (double t : {0.0, 10.0}) {
      p.temperature = t;
      for (double x : {0.05, 0.5, 0.9, 1.3}) {
        const auto cov = covariance(x * p.omega_m, p, steady);
        worst = std::max(worst, std::abs(teleport_fidelity(cov.A, cov.C, d) -
                                         fidelity_quadrature_oracle(cov.A, cov.C, d)));
      }
    }
    detail << "max |closed - quadrature| = " << worst;
    return worst < 1e-6;
  });
}

}  // namespace

std::vector<CheckResult> run_builtin_checks() {
  return {vacuum_identities(), thermal_limits(), sweep_invariants(), bistability(),
          oracle_agreement()};
}

}  // namespace pondera
