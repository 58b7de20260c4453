#include <fstream>
#include <system_error>

#include "pondera/sweep.hpp"

namespace pondera {

namespace {

constexpr const char* kMissing = "NA";

std::string quoted(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string cell(const std::optional<double>& v) {
  return v ? format_double(*v) : kMissing;
}

std::string flag(bool ok, bool value) { return ok ? (value ? "1" : "0") : kMissing; }

bool tripartite_column(const SweepConfig& c) {
  return c.params.mode_count == 3 && c.criteria.any();
}

}  // namespace

std::vector<std::string> csv_columns(const SweepConfig& c) {
  std::vector<std::string> cols{"omega", "omega_over_omega_m", "T", "c_omega",
                                "min_uncertainty_eig"};
  if (c.criteria.simon) cols.insert(cols.end(), {"E_simon", "entangled_simon"});
  if (c.criteria.product) cols.insert(cols.end(), {"E_product", "entangled_product"});
  if (c.criteria.sum) cols.insert(cols.end(), {"E_sum", "entangled_sum"});
  if (tripartite_column(c)) cols.emplace_back("tripartite_fully_inseparable");
  if (c.teleport) cols.insert(cols.end(), {"F_tele", "beats_classical_tele"});
  if (c.teleclone) {
    cols.insert(cols.end(), {"F_clone", "beats_classical_clone", "within_cloning_bound"});
  }
  cols.emplace_back("error");
  return cols;
}

int emit_csv(const SweepConfig& c, const std::vector<SweepRow>& rows,
             std::ostream& out) {
  for (const auto& line : echo_config(c)) out << "# " << line << '\n';

  const auto columns = csv_columns(c);
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';

  bool any_error = false;
  for (const auto& row : rows) {
    const bool ok = row.ok();
    any_error = any_error || !ok;
    std::vector<std::string> f{format_double(row.omega),
                               format_double(row.omega / c.params.omega_m),
                               format_double(row.temperature), cell(row.c_omega),
                               cell(row.min_uncertainty_eigenvalue)};
    const auto* e = row.entanglement ? &*row.entanglement : nullptr;
    const auto marker = [&](double EntanglementReport::*value) {
      return e ? format_double(e->*value) : kMissing;
    };
    if (c.criteria.simon) {
      f.push_back(marker(&EntanglementReport::e_simon));
      f.push_back(flag(e, e && e->entangled_simon));
    }
    if (c.criteria.product) {
      f.push_back(marker(&EntanglementReport::e_product));
      f.push_back(flag(e, e && e->entangled_product));
    }
    if (c.criteria.sum) {
      f.push_back(marker(&EntanglementReport::e_sum));
      f.push_back(flag(e, e && e->entangled_sum));
    }
    if (tripartite_column(c)) {
      const bool known = e && e->tripartite_fully_inseparable.has_value();
      f.push_back(flag(known, known && *e->tripartite_fully_inseparable));
    }
    const auto* t = row.transfer ? &*row.transfer : nullptr;
    if (c.teleport) {
      f.push_back(cell(t ? t->f_tele : std::nullopt));
      f.push_back(flag(t, t && t->beats_classical_tele));
    }
    if (c.teleclone) {
      f.push_back(cell(t ? t->f_clone : std::nullopt));
      f.push_back(flag(t, t && t->beats_classical_clone));
      f.push_back(flag(t, t && t->within_cloning_bound));
    }
    f.push_back(quoted(row.error));
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << f[i];
    out << '\n';
  }
  return any_error ? exit_code::point_errors : exit_code::ok;
}

int emit_csv(const SweepConfig& c, const std::vector<SweepRow>& rows,
             const std::filesystem::path& destination) {
  auto temporary = destination;
  temporary += ".partial";
  int code = exit_code::ok;
  {
    std::ofstream file(temporary, std::ios::binary | std::ios::trunc);
    if (!file) return exit_code::io_error;
    code = emit_csv(c, rows, file);
    file.flush();
    if (!file) {
      file.close();
      std::error_code ignored;
      std::filesystem::remove(temporary, ignored);
      return exit_code::io_error;
    }
  }
  std::error_code ec;
  std::filesystem::rename(temporary, destination, ec);
  if (ec) {
    std::filesystem::remove(temporary, ec);
    return exit_code::io_error;
  }
  return code;
}

}  // namespace pondera
