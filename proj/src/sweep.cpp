#include "pondera/sweep.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

#include "pondera/errors.hpp"

namespace pondera {

SweepRow evaluate_point(const SweepConfig& config, const SteadyState& steady,
                        double omega, double temperature) {
  SweepRow row;
  row.omega = omega;
  row.temperature = temperature;
  PhysicalParams params = config.params;
  params.temperature = temperature;
  try {
    const auto cov = covariance(omega, params, steady);
    std::optional<EntanglementReport> entanglement;
    if (config.criteria.any()) entanglement = evaluate_entanglement(cov, config.criteria);
    std::optional<TransferReport> transfer;
    if (config.teleport || config.teleclone) {
      transfer = evaluate_transfer(cov, config.input, config.teleport, config.teleclone);
    }
    row.c_omega = cov.c_omega;
    row.min_uncertainty_eigenvalue = uncertainty_min_eigenvalue(cov.V);
    row.entanglement = entanglement;
    row.transfer = transfer;
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config, unsigned workers) {
  const auto omegas = config.grid.omegas(config.params.omega_m);
  const auto& temps = config.temperatures;
  std::vector<SweepRow> rows(omegas.size() * temps.size());
  if (rows.empty()) return rows;

  const SteadyState steady = steady_state_from_detuning(config.params);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      rows[i] = evaluate_point(config, steady, omegas[i / temps.size()],
                               temps[i % temps.size()]);
    }
  };

  const unsigned count = std::max(1u, std::min<unsigned>(workers, rows.size()));
  if (count == 1) {
    work();
    return rows;
  }
  std::vector<std::jthread> pool;
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(work);
  pool.clear();  // joins
  return rows;
}

unsigned resolve_worker_count(std::optional<unsigned> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("PONDERA_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  return 1;
}

}  // namespace pondera
