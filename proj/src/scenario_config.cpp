#include "radcomp/scenario_config.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace radcomp {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& s, int line) {
  char* end = nullptr;
  const std::string t = trim(s);
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    throw config_error("expected a real number, got '" + t + "'", line);
  return v;
}

std::vector<double> parse_reals(const std::string& s, int line) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item, line));
  if (out.empty()) throw config_error("expected comma-separated reals", line);
  return out;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open table file '" + path + "'");
  CsvTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(t);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (table.header.empty()) {
      table.header = cells;
      continue;
    }
    if (cells.size() != table.header.size())
      throw config_error("table '" + path + "': ragged row", lineno);
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& c : cells) row.push_back(parse_real(c, lineno));
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty() || table.rows.empty())
    throw config_error("table '" + path + "': needs a header row and data rows");
  return table;
}

NonlinearityF load_f_table(const std::string& path) {
  const CsvTable t = read_csv(path);
  if (t.header.size() < 2)
    throw config_error("f table '" + path + "': needs r plus at least one level column");
  const Index nlev = static_cast<Index>(t.header.size()) - 1;
  Array levels(nlev);
  for (Index j = 0; j < nlev; ++j) {
    std::string name = t.header[static_cast<size_t>(j) + 1];
    // accept both bare numbers and "t=<value>" headers
    if (name.rfind("t=", 0) == 0) name = name.substr(2);
    levels[j] = parse_real(name, 1);
  }
  const Index nr = static_cast<Index>(t.rows.size());
  Array radii(nr);
  Eigen::MatrixXd values(nr, nlev);
  for (Index i = 0; i < nr; ++i) {
    radii[i] = t.rows[static_cast<size_t>(i)][0];
    for (Index j = 0; j < nlev; ++j)
      values(i, j) = t.rows[static_cast<size_t>(i)][static_cast<size_t>(j) + 1];
  }
  return NonlinearityF::tabulated(std::move(radii), std::move(levels), std::move(values));
}

DriftB load_b_table(const std::string& path) {
  const CsvTable t = read_csv(path);
  if (t.header.size() != 2) throw config_error("b table '" + path + "': needs columns r,b");
  const Index nr = static_cast<Index>(t.rows.size());
  Array radii(nr), values(nr);
  for (Index i = 0; i < nr; ++i) {
    radii[i] = t.rows[static_cast<size_t>(i)][0];
    values[i] = t.rows[static_cast<size_t>(i)][1];
  }
  return DriftB::tabulated(std::move(radii), std::move(values));
}

struct EvaluatorSpec {
  std::string kind;
  std::vector<double> coefficients;
  int kind_line = 0;
};

std::string resolve(const std::string& dir, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(dir) / p).string();
}

NonlinearityF build_f(const EvaluatorSpec& spec, const std::string& dir) {
  if (spec.kind.empty()) return NonlinearityF::zero();
  if (spec.kind == "constant") {
    if (spec.coefficients.size() != 1)
      throw config_error("[f] constant takes one coefficient", spec.kind_line);
    return NonlinearityF::constant(spec.coefficients[0]);
  }
  if (spec.kind == "power") {
    if (spec.coefficients.size() != 2)
      throw config_error("[f] power takes coefficients c,q", spec.kind_line);
    return NonlinearityF::power(spec.coefficients[0], spec.coefficients[1]);
  }
  if (spec.kind.rfind("table:", 0) == 0) return load_f_table(resolve(dir, spec.kind.substr(6)));
  throw config_error("[f] unknown kind '" + spec.kind + "'", spec.kind_line);
}

DriftB build_b(const EvaluatorSpec& spec, const std::string& dir) {
  if (spec.kind.empty()) return DriftB::zero();
  if (spec.kind == "constant") {
    if (spec.coefficients.size() != 1)
      throw config_error("[b] constant takes one coefficient", spec.kind_line);
    return DriftB::constant(spec.coefficients[0]);
  }
  if (spec.kind == "power") {
    if (spec.coefficients.size() != 2)
      throw config_error("[b] power takes coefficients c,q", spec.kind_line);
    return DriftB::power(spec.coefficients[0], spec.coefficients[1]);
  }
  if (spec.kind.rfind("table:", 0) == 0) return load_b_table(resolve(dir, spec.kind.substr(6)));
  throw config_error("[b] unknown kind '" + spec.kind + "'", spec.kind_line);
}

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text, const std::string& dir) {
  ScenarioConfig config;
  EvaluatorSpec f_spec, b_spec;

  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;

    if (t.front() == '[') {
      if (t.back() != ']') throw config_error("unterminated section header", lineno);
      section = t.substr(1, t.size() - 2);
      if (section != "params" && section != "f" && section != "b" && section != "grid")
        throw config_error("unknown section [" + section + "]", lineno);
      continue;
    }

    const size_t eq = t.find('=');
    if (eq == std::string::npos) throw config_error("expected key = value", lineno);
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (section.empty()) throw config_error("key outside any section", lineno);

    if (section == "params") {
      if (key == "p") config.params.p = parse_real(value, lineno);
      else if (key == "a") config.params.a = parse_real(value, lineno);
      else if (key == "k") config.params.k = parse_real(value, lineno);
      else if (key == "sigma") config.params.sigma = parse_real(value, lineno);
      else if (key == "n") config.params.n = static_cast<int>(parse_real(value, lineno));
      else if (key == "R0") config.params.R0 = parse_real(value, lineno);
      else if (key == "Rmax") config.params.Rmax = parse_real(value, lineno);
      else if (key == "blowup_cap") config.params.blowup_cap = parse_real(value, lineno);
      else throw config_error("unknown key '" + key + "' in [params]", lineno);
    } else if (section == "f" || section == "b") {
      EvaluatorSpec& spec = section == "f" ? f_spec : b_spec;
      if (key == "kind") {
        spec.kind = value;
        spec.kind_line = lineno;
      } else if (key == "coefficients") {
        spec.coefficients = parse_reals(value, lineno);
      } else {
        throw config_error("unknown key '" + key + "' in [" + section + "]", lineno);
      }
    } else {  // grid
      if (key == "n") {
        config.grid_nodes = static_cast<Index>(parse_real(value, lineno));
        if (config.grid_nodes < 3) throw config_error("[grid] n must be >= 3", lineno);
      } else {
        throw config_error("unknown key '" + key + "' in [grid]", lineno);
      }
    }
  }

  try {
    config.params.validate();
  } catch (const invalid_input& err) {
    throw config_error(err.what());
  }
  config.f = build_f(f_spec, dir);
  config.b = build_b(b_spec, dir);
  return config;
}

ScenarioConfig parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str(),
                             std::filesystem::path(path).parent_path().string());
}

}  // namespace radcomp
