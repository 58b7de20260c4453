#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pondera/check.hpp"
#include "pondera/sweep.hpp"

namespace {

int run_sweep_command(const std::string& config_path, const std::string& out_path,
                      const std::string& preset_name, std::optional<unsigned> threads) {
  using namespace pondera;
  std::optional<Preset> preset;
  if (!preset_name.empty()) {
    preset = preset_from_name(preset_name);
    if (!preset) {
      std::cerr << "unknown preset '" << preset_name << "'\n";
      return exit_code::config_error;
    }
  }
  std::string text;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "cannot read config file " << config_path << '\n';
      return exit_code::config_error;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  } else if (!preset) {
    std::cerr << "either --config or --preset is required\n";
    return exit_code::config_error;
  }

  SweepConfig config;
  try {
    config = parse_config(text, preset);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return exit_code::config_error;
  }
  if (config.params.outside_adiabatic_regime()) {
    std::cerr << "warning: omega_m exceeds 1% of the cavity free spectral range\n";
  }

  const auto rows = run_sweep(config, resolve_worker_count(threads));
  int code = exit_code::ok;
  if (out_path.empty()) {
    code = emit_csv(config, rows, std::cout);
    std::cout.flush();
    if (!std::cout) code = exit_code::io_error;
  } else {
    code = emit_csv(config, rows, std::filesystem::path(out_path));
  }
  if (code == exit_code::io_error) std::cerr << "failed to write output\n";
  if (code == exit_code::point_errors) std::cerr << "some grid points could not be evaluated\n";
  return code;
}

int run_check_command() {
  bool all = true;
  for (const auto& r : pondera::run_builtin_checks()) {
    std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name << ": " << r.detail << '\n';
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Output-field covariance, entanglement and state-transfer fidelity of a "
               "driven cavity with a movable mirror"};
  app.require_subcommand(1);

  std::string config_path, out_path, preset;
  std::optional<unsigned> threads;
  auto* sweep = app.add_subcommand("sweep", "Evaluate a frequency/temperature sweep to CSV");
  sweep->add_option("--config", config_path, "key = value configuration file");
  sweep->add_option("--out", out_path, "CSV destination (default: stdout)");
  sweep->add_option("--preset", preset, "fig2 | fig3 | fig4 | fig5 | fig6");
  sweep->add_option("--threads", threads, "worker count (default: $PONDERA_THREADS or 1)")
      ->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "Run the built-in invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : pondera::exit_code::config_error;
  }

  if (*sweep) return run_sweep_command(config_path, out_path, preset, threads);
  if (*check) return run_check_command();
  return 0;
}
