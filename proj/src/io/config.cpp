#include "pswitch/io/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pswitch/profit.hpp"

namespace pswitch {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_num(const std::string& v, const std::string& key) {
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw std::runtime_error("config: bad numeric value for '" + key + "': " + v);
  return d;
}

long long parse_int(const std::string& v, const std::string& key) {
  char* end = nullptr;
  const long long d = std::strtoll(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw std::runtime_error("config: bad integer value for '" + key + "': " + v);
  return d;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : v) {
    if (c == ',') {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

void set_key(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "drift") c.model.drift = parse_num(value, key);
  else if (key == "sigma") c.model.sigma = parse_num(value, key);
  else if (key == "a1") c.model.a1 = parse_num(value, key);
  else if (key == "lambda") c.model.lambda = parse_num(value, key);
  else if (key == "g12") c.model.g12 = parse_num(value, key);
  else if (key == "g21") c.model.g21 = parse_num(value, key);
  else if (key == "profit1") c.model.profit1 = parse_profit(value);
  else if (key == "profit2") c.model.profit2 = parse_profit(value);
  else if (key == "x0") c.model.x0 = parse_num(value, key);
  else if (key == "regime0") c.model.regime0 = static_cast<int>(parse_int(value, key));
  else if (key == "x_min") c.x_min = parse_num(value, key);
  else if (key == "x_max") c.x_max = parse_num(value, key);
  else if (key == "n_nodes") c.n_nodes = static_cast<std::size_t>(parse_int(value, key));
  else if (key == "tol") c.solver.tol = parse_num(value, key);
  else if (key == "max_iter") c.solver.max_iter = static_cast<int>(parse_int(value, key));
  else if (key == "t_max") c.paths.t_max = parse_num(value, key);
  else if (key == "dt") c.paths.dt = parse_num(value, key);
  else if (key == "n_paths") c.paths.n_paths = static_cast<std::size_t>(parse_int(value, key));
  else if (key == "seed") c.paths.seed = static_cast<std::uint64_t>(parse_int(value, key));
  else if (key == "tail_budget") c.paths.tail_budget = parse_num(value, key);
  else if (key == "verify_tol") c.verify_tol = parse_num(value, key);
  else if (key == "allow_integrability_override")
    c.allow_integrability_override = parse_int(value, key) != 0;
  else if (key == "out_dir") c.out_dir = value;
  else if (key == "formats") c.formats = split_list(value);
  else throw std::runtime_error("config: unknown key '" + key + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: line " + std::to_string(lineno) +
                               " is not 'key = value'");
    try {
      set_key(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string(e.what()) + " (line " +
                               std::to_string(lineno) + ")");
    }
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw std::runtime_error("config: override must be key=value: " + assignment);
  set_key(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string emit_config(const RunConfig& c) {
  std::ostringstream o;
  o << "drift = " << fmt(c.model.drift) << "\n";
  o << "sigma = " << fmt(c.model.sigma) << "\n";
  o << "a1 = " << fmt(c.model.a1) << "\n";
  o << "lambda = " << fmt(c.model.lambda) << "\n";
  o << "g12 = " << fmt(c.model.g12) << "\n";
  o << "g21 = " << fmt(c.model.g21) << "\n";
  o << "profit1 = " << format_profit(c.model.profit1) << "\n";
  o << "profit2 = " << format_profit(c.model.profit2) << "\n";
  o << "x0 = " << fmt(c.model.x0) << "\n";
  o << "regime0 = " << c.model.regime0 << "\n";
  o << "x_min = " << fmt(c.x_min) << "\n";
  o << "x_max = " << fmt(c.x_max) << "\n";
  o << "n_nodes = " << c.n_nodes << "\n";
  o << "tol = " << fmt(c.solver.tol) << "\n";
  o << "max_iter = " << c.solver.max_iter << "\n";
  o << "t_max = " << fmt(c.paths.t_max) << "\n";
  o << "dt = " << fmt(c.paths.dt) << "\n";
  o << "n_paths = " << c.paths.n_paths << "\n";
  o << "seed = " << c.paths.seed << "\n";
  o << "tail_budget = " << fmt(c.paths.tail_budget) << "\n";
  o << "verify_tol = " << fmt(c.verify_tol) << "\n";
  o << "allow_integrability_override = " << (c.allow_integrability_override ? 1 : 0) << "\n";
  o << "out_dir = " << c.out_dir << "\n";
  std::string fl;
  for (const std::string& f : c.formats) {
    if (!fl.empty()) fl += ",";
    fl += f;
  }
  o << "formats = " << fl << "\n";
  return o.str();
}

std::string preset_path(const std::string& name) {
  std::vector<std::string> dirs;
  if (const char* env = std::getenv("PSWITCH_PRESET_DIR")) dirs.push_back(env);
  dirs.push_back("presets");
  for (const std::string& d : dirs) {
    const std::string p = d + "/" + name + ".cfg";
    std::ifstream probe(p);
    if (probe) return p;
  }
  throw std::runtime_error("preset not found: " + name +
                           " (searched PSWITCH_PRESET_DIR and ./presets)");
}

}  // namespace pswitch
