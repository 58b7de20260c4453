#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pondera/config.hpp"

namespace pondera {

/// Result at one (omega, T) grid point. `error` is non-empty when the point
/// could not be evaluated; the optional fields are then empty.
struct SweepRow {
  double omega = 0.0;
  double temperature = 0.0;
  std::optional<double> c_omega;
  std::optional<double> min_uncertainty_eigenvalue;
  std::optional<EntanglementReport> entanglement;
  std::optional<TransferReport> transfer;
  std::string error;

  bool ok() const { return error.empty(); }
};

SweepRow evaluate_point(const SweepConfig& config, const SteadyState& steady,
                        double omega, double temperature);

/// One row per (omega, T), omega-major. Output is independent of `workers`.
std::vector<SweepRow> run_sweep(const SweepConfig& config, unsigned workers = 1);

/// Worker count from the flag, else PONDERA_THREADS, else 1.
unsigned resolve_worker_count(std::optional<unsigned> flag);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config_error = 1;
inline constexpr int point_errors = 2;
inline constexpr int io_error = 3;
}  // namespace exit_code

std::vector<std::string> csv_columns(const SweepConfig& config);

/// Writes the echoed config as `# key = value` lines, the column header and
/// one line per row. Returns exit_code::ok or exit_code::point_errors.
int emit_csv(const SweepConfig& config, const std::vector<SweepRow>& rows,
             std::ostream& out);

/// Same, into a file written via a temporary sibling and a rename; returns
/// exit_code::io_error (and leaves no file behind) on I/O failure.
int emit_csv(const SweepConfig& config, const std::vector<SweepRow>& rows,
             const std::filesystem::path& destination);

}  // namespace pondera
