#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pondera/entanglement.hpp"
#include "pondera/errors.hpp"
#include "pondera/model.hpp"
#include "pondera/transfer.hpp"

namespace pondera {

enum class Preset { Fig2, Fig3, Fig4, Fig5, Fig6 };

std::optional<Preset> preset_from_name(std::string_view name);
std::string_view preset_name(Preset preset);

enum class FrequencyUnits { RadPerSecond, MechanicalFrequency };

struct FrequencyGrid {
  double start = 0.0;
  double stop = 2.0;
  int points = 1000;
  FrequencyUnits units = FrequencyUnits::MechanicalFrequency;

  /// Evenly spaced grid in rad/s, both endpoints included.
  std::vector<double> omegas(double omega_m) const;
};

struct SweepConfig {
  PhysicalParams params = PhysicalParams::table_one();
  FrequencyGrid grid;
  std::vector<double> temperatures{0.0};
  CriterionSet criteria = CriterionSet::all();
  bool teleport = false;
  bool teleclone = false;
  GaussianInput input;
  std::optional<Preset> preset;
};

struct ConfigIssue {
  int line = 0;  // 1-based; 0 when the problem is not tied to one line
  std::string message;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// Table I parameters with the detuning, temperatures, mode count and
/// outputs of one figure.
SweepConfig preset_config(Preset preset);

/// Parses flat `key = value` text. `#` starts a comment; keys are
/// case-sensitive. A preset (from the text or `preset_override`) pins the
/// physical parameters, detuning, temperatures and outputs; grid keys stay
/// adjustable. Every problem found is reported in one ConfigError.
SweepConfig parse_config(std::string_view text,
                         std::optional<Preset> preset_override = std::nullopt);

/// The config as `key = value` lines that parse_config accepts and that
/// reproduce every numeric value bit-exactly.
std::vector<std::string> echo_config(const SweepConfig& config);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

}  // namespace pondera
