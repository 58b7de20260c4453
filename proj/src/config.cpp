#include "pondera/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace pondera {

namespace {

constexpr std::array<std::pair<Preset, std::string_view>, 5> kPresetNames{{
    {Preset::Fig2, "fig2"},
    {Preset::Fig3, "fig3"},
    {Preset::Fig4, "fig4"},
    {Preset::Fig5, "fig5"},
    {Preset::Fig6, "fig6"},
}};

constexpr std::array<std::string_view, 22> kKnownKeys{
    "preset",       "mode_count",   "omega_m",      "omega_0",
    "mass",         "cavity_length", "gamma_m",     "gamma_c",
    "input_power",  "detuning",     "temperatures", "temperature",
    "omega_start",  "omega_stop",   "omega_points", "omega_units",
    "criteria",     "transfer",     "input_state",  "input_d11",
    "input_d12",    "input_d22"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  double value = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

struct Entry {
  std::string value;
  int line = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) { scan(text); }

  std::vector<ConfigIssue> issues;
  std::map<std::string, Entry, std::less<>> entries;

  int line_of(std::string_view key) const {
    const auto it = entries.find(key);
    return it == entries.end() ? 0 : it->second.line;
  }

  void report(std::string_view key, std::string message) {
    issues.push_back({line_of(key), std::move(message)});
  }

  void number(std::string_view key, double& target) {
    const auto it = entries.find(key);
    if (it == entries.end()) return;
    if (auto v = parse_double(it->second.value)) {
      target = *v;
    } else {
      report(key, "cannot parse '" + it->second.value + "' as a number for " +
                      std::string(key));
    }
  }

  void integer(std::string_view key, int& target) {
    const auto it = entries.find(key);
    if (it == entries.end()) return;
    if (auto v = parse_int(it->second.value)) {
      target = *v;
    } else {
      report(key, "cannot parse '" + it->second.value + "' as an integer for " +
                      std::string(key));
    }
  }

 private:
  void scan(std::string_view text) {
    int line_no = 0;
    while (!text.empty()) {
      ++line_no;
      const auto newline = text.find('\n');
      std::string_view line = text.substr(0, newline);
      text = newline == std::string_view::npos ? std::string_view{}
                                               : text.substr(newline + 1);
      if (const auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        issues.push_back({line_no, "expected 'key = value'"});
        continue;
      }
      const auto key = trim(line.substr(0, eq));
      const auto value = trim(line.substr(eq + 1));
      if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
        issues.push_back({line_no, "unknown key '" + std::string(key) + "'"});
        continue;
      }
      if (entries.count(key)) {
        issues.push_back({line_no, "duplicate key '" + std::string(key) + "'"});
        continue;
      }
      entries.emplace(std::string(key), Entry{std::string(value), line_no});
    }
  }
};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

std::string format_issues(const std::vector<ConfigIssue>& issues) {
  std::ostringstream out;
  out << "invalid configuration:";
  for (const auto& issue : issues) {
    out << "\n  ";
    if (issue.line > 0) out << "line " << issue.line << ": ";
    out << issue.message;
  }
  return out.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : Error(format_issues(issues)), issues_(std::move(issues)) {}

std::optional<Preset> preset_from_name(std::string_view name) {
  for (const auto& [preset, text] : kPresetNames) {
    if (text == name) return preset;
  }
  return std::nullopt;
}

std::string_view preset_name(Preset preset) {
  for (const auto& [p, text] : kPresetNames) {
    if (p == preset) return text;
  }
  return "unknown";
}

std::vector<double> FrequencyGrid::omegas(double omega_m) const {
  const double unit = units == FrequencyUnits::MechanicalFrequency ? omega_m : 1.0;
  std::vector<double> out;
  if (points < 1) return out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double fraction = points > 1 ? static_cast<double>(i) / (points - 1) : 0.0;
    const double x = i == points - 1 && points > 1 ? stop : start + (stop - start) * fraction;
    out.push_back(x * unit);
  }
  return out;
}

SweepConfig preset_config(Preset preset) {
  SweepConfig c;
  c.preset = preset;
  c.params = PhysicalParams::table_one();
  c.grid = FrequencyGrid{};
  c.criteria = CriterionSet::sum_only();
  switch (preset) {
    case Preset::Fig2:
      c.params.detuning = 0.0;
      c.temperatures = {0.0, 300.0};
      c.criteria = CriterionSet::all();
      break;
    case Preset::Fig3:
      c.params.detuning = -0.1;
      c.temperatures = {0.0, 10.0, 50.0};
      break;
    case Preset::Fig4:
      c.params.detuning = 0.1;
      c.temperatures = {0.0, 10.0, 50.0, 100.0};
      break;
    case Preset::Fig5:
      c.params.detuning = 0.1;
      c.temperatures = {0.0, 10.0, 50.0, 100.0};
      c.teleport = true;
      break;
    case Preset::Fig6:
      c.params.detuning = 0.1;
      c.params.mode_count = 3;
      c.temperatures = {0.0, 10.0, 50.0, 100.0};
      c.teleclone = true;
      break;
  }
  return c;
}

SweepConfig parse_config(std::string_view text, std::optional<Preset> preset_override) {
  Parser p(text);

  std::optional<Preset> preset = preset_override;
  if (const auto it = p.entries.find("preset"); it != p.entries.end() && !preset) {
    preset = preset_from_name(it->second.value);
    if (!preset) p.report("preset", "unknown preset '" + it->second.value + "'");
  }

  SweepConfig c = preset ? preset_config(*preset) : SweepConfig{};

  if (!preset) {
    p.integer("mode_count", c.params.mode_count);
    p.number("omega_m", c.params.omega_m);
    p.number("omega_0", c.params.omega_0);
    p.number("mass", c.params.mass);
    p.number("cavity_length", c.params.cavity_length);
    p.number("gamma_m", c.params.gamma_m);
    p.number("gamma_c", c.params.gamma_c);
    p.number("input_power", c.params.input_power);
    p.number("detuning", c.params.detuning);
    if (p.entries.count("temperature") && p.entries.count("temperatures")) {
      p.report("temperature", "give either 'temperature' or 'temperatures', not both");
    }
    for (const char* key : {"temperatures", "temperature"}) {
      const auto it = p.entries.find(key);
      if (it == p.entries.end()) continue;
      c.temperatures.clear();
      for (auto item : split_list(it->second.value)) {
        if (auto v = parse_double(item)) {
          c.temperatures.push_back(*v);
        } else {
          p.report(key, "cannot parse temperature '" + std::string(item) + "'");
        }
      }
    }
  }

  p.number("omega_start", c.grid.start);
  p.number("omega_stop", c.grid.stop);
  p.integer("omega_points", c.grid.points);
  if (const auto it = p.entries.find("omega_units"); it != p.entries.end()) {
    if (it->second.value == "omega_m") {
      c.grid.units = FrequencyUnits::MechanicalFrequency;
    } else if (it->second.value == "rad/s") {
      c.grid.units = FrequencyUnits::RadPerSecond;
    } else {
      p.report("omega_units", "omega_units must be 'omega_m' or 'rad/s'");
    }
  }

  if (const auto it = p.entries.find("criteria"); it != p.entries.end()) {
    c.criteria = {};
    for (auto item : split_list(it->second.value)) {
      if (item == "simon") c.criteria.simon = true;
      else if (item == "product") c.criteria.product = true;
      else if (item == "sum") c.criteria.sum = true;
      else if (item != "none")
        p.report("criteria", "unknown criterion '" + std::string(item) + "'");
    }
  }
  if (const auto it = p.entries.find("transfer"); it != p.entries.end()) {
    c.teleport = c.teleclone = false;
    for (auto item : split_list(it->second.value)) {
      if (item == "teleport") c.teleport = true;
      else if (item == "teleclone") c.teleclone = true;
      else if (item != "none")
        p.report("transfer", "unknown transfer protocol '" + std::string(item) + "'");
    }
  }

  if (const auto it = p.entries.find("input_state"); it != p.entries.end()) {
    if (it->second.value == "coherent") {
      c.input = GaussianInput::coherent();
      for (const char* key : {"input_d11", "input_d12", "input_d22"}) {
        if (p.entries.count(key)) p.report(key, std::string(key) + " requires input_state = explicit");
      }
    } else if (it->second.value == "explicit") {
      double d11 = 0.5, d12 = 0.0, d22 = 0.5;
      for (const char* key : {"input_d11", "input_d22"}) {
        if (!p.entries.count(key)) p.report("input_state", std::string("explicit input needs ") + key);
      }
      p.number("input_d11", d11);
      p.number("input_d12", d12);
      p.number("input_d22", d22);
      c.input.D << d11, d12, d12, d22;
      try {
        c.input.validate();
      } catch (const std::invalid_argument& e) {
        p.report("input_state", e.what());
      }
    } else {
      p.report("input_state", "input_state must be 'coherent' or 'explicit'");
    }
  } else {
    for (const char* key : {"input_d11", "input_d12", "input_d22"}) {
      if (p.entries.count(key)) p.report(key, std::string(key) + " requires input_state = explicit");
    }
  }

  // Invariants.
  if (c.grid.points < 2) {
    p.report("omega_points", "omega_points must be at least 2 (got " +
                                 std::to_string(c.grid.points) + ")");
  }
  if (!(c.grid.start < c.grid.stop)) {
    p.report(p.entries.count("omega_stop") ? "omega_stop" : "omega_start",
             "omega_start must be smaller than omega_stop");
  }
  for (double t : c.temperatures) {
    if (!(t >= 0.0)) {
      p.report(p.entries.count("temperature") ? "temperature" : "temperatures",
               "temperatures must be non-negative");
      break;
    }
  }
  for (const auto& problem : c.params.problems()) {
    const auto name = problem.substr(0, problem.find(' '));
    p.report(name, problem);
  }
  const int n = c.params.mode_count;
  if (c.criteria.any() && n < 2) {
    p.report("criteria", "entanglement criteria need mode_count >= 2");
  }
  if (c.teleport && n < 2) {
    p.report("transfer", "teleportation needs mode_count >= 2");
  }
  if (c.teleclone && n != 3) {
    p.report("transfer", "telecloning needs mode_count = 3");
  }

  if (!p.issues.empty()) {
    std::stable_sort(p.issues.begin(), p.issues.end(),
                     [](const auto& l, const auto& r) { return l.line < r.line; });
    throw ConfigError(std::move(p.issues));
  }
  return c;
}

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ec == std::errc() ? ptr : buffer.data());
}

std::vector<std::string> echo_config(const SweepConfig& c) {
  std::vector<std::string> lines;
  const auto add = [&](std::string_view key, const std::string& value) {
    lines.push_back(std::string(key) + " = " + value);
  };
  if (c.preset) add("preset", std::string(preset_name(*c.preset)));
  add("mode_count", std::to_string(c.params.mode_count));
  add("omega_m", format_double(c.params.omega_m));
  add("omega_0", format_double(c.params.omega_0));
  add("mass", format_double(c.params.mass));
  add("cavity_length", format_double(c.params.cavity_length));
  add("gamma_m", format_double(c.params.gamma_m));
  add("gamma_c", format_double(c.params.gamma_c));
  add("input_power", format_double(c.params.input_power));
  add("detuning", format_double(c.params.detuning));
  std::vector<std::string> temps;
  for (double t : c.temperatures) temps.push_back(format_double(t));
  add("temperatures", join(temps));
  add("omega_start", format_double(c.grid.start));
  add("omega_stop", format_double(c.grid.stop));
  add("omega_points", std::to_string(c.grid.points));
  add("omega_units", c.grid.units == FrequencyUnits::MechanicalFrequency ? "omega_m" : "rad/s");
  std::vector<std::string> criteria;
  if (c.criteria.simon) criteria.emplace_back("simon");
  if (c.criteria.product) criteria.emplace_back("product");
  if (c.criteria.sum) criteria.emplace_back("sum");
  add("criteria", criteria.empty() ? "none" : join(criteria));
  std::vector<std::string> transfer;
  if (c.teleport) transfer.emplace_back("teleport");
  if (c.teleclone) transfer.emplace_back("teleclone");
  add("transfer", transfer.empty() ? "none" : join(transfer));
  if (c.input.D == GaussianInput::coherent().D) {
    add("input_state", "coherent");
  } else {
    add("input_state", "explicit");
    add("input_d11", format_double(c.input.D(0, 0)));
    add("input_d12", format_double(c.input.D(0, 1)));
    add("input_d22", format_double(c.input.D(1, 1)));
  }
  return lines;
}

}  // namespace pondera
