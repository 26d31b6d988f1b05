#include "qoc/scenario.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace qoc {

void Scenario::validate() const {
  params.validate();
  grid.validate();
  weights.validate();
  sweep.validate();
  if (grid.t0 != 0.0) throw ConfigError("scenario '" + label + "': grid must start at t = 0");
  if (!is_valid_state(x0)) throw ConfigError("scenario '" + label + "': x0 outside the Bloch ball");
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& value, int line) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (trim(value.substr(pos)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("expected a number, got '" + value + "'", line);
}

int parse_int(const std::string& value, int line) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(value, &pos);
    if (trim(value.substr(pos)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("expected an integer, got '" + value + "'", line);
}

BlochVector parse_vector3(const std::string& value, int line) {
  std::stringstream ss(value);
  std::string part;
  BlochVector v;
  int i = 0;
  while (std::getline(ss, part, ',')) {
    if (i >= 3) throw ConfigError("expected three comma-separated numbers", line);
    v[i++] = parse_double(trim(part), line);
  }
  if (i != 3) throw ConfigError("expected three comma-separated numbers", line);
  return v;
}

void apply_key(Scenario& s, const std::string& key, const std::string& value, int line) {
  if (key == "label") s.label = value;
  else if (key == "alpha2") s.params.alpha2 = parse_double(value, line);
  else if (key == "omega0") s.params.omega0 = parse_double(value, line);
  else if (key == "r") s.params.r = parse_double(value, line);
  else if (key == "kBT") s.params.kBT = parse_double(value, line);
  else if (key == "gamma0") s.params.gamma0 = parse_double(value, line);
  else if (key == "x0") s.x0 = parse_vector3(value, line);
  else if (key == "tf") s.grid.tf = parse_double(value, line);
  else if (key == "n_steps") s.grid.n_steps = parse_int(value, line);
  else if (key == "theta") s.weights.theta = parse_double(value, line);
  else if (key == "relaxation") s.sweep.relaxation = parse_double(value, line);
  else if (key == "max_iters") s.sweep.max_iters = parse_int(value, line);
  else if (key == "tol_cost") s.sweep.tol_cost = parse_double(value, line);
  else if (key == "tol_control") s.sweep.tol_control = parse_double(value, line);
  else if (key == "max_step_halvings") s.sweep.max_step_halvings = parse_int(value, line);
  else if (key == "method") {
    try {
      s.method = coefficient_method_from_string(value);
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), line);
    }
  } else {
    throw ConfigError("unknown key '" + key + "'", line);
  }
}

}  // namespace

std::vector<Scenario> parse_config(const std::string& text) {
  Scenario base;
  std::vector<Scenario> scenarios;
  bool in_section = false;

  std::stringstream ss(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(ss, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line != "[scenario]")
        throw ConfigError("unknown section '" + line + "'", line_no);
      scenarios.push_back(base);
      in_section = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + line + "'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line_no);
    apply_key(in_section ? scenarios.back() : base, key, value, line_no);
  }

  if (scenarios.empty()) scenarios.push_back(base);
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    if (scenarios[i].label.empty()) throw ConfigError("scenario labels must be nonempty");
    for (std::size_t j = i + 1; j < scenarios.size(); ++j)
      if (scenarios[i].label == scenarios[j].label)
        throw ConfigError("duplicate scenario label '" + scenarios[i].label + "'");
    scenarios[i].validate();
  }
  return scenarios;
}

std::vector<Scenario> load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const Scenario& s) {
  std::ostringstream out;
  out.precision(17);
  out << "[scenario]\n";
  out << "label = " << s.label << "\n";
  out << "alpha2 = " << s.params.alpha2 << "\n";
  out << "omega0 = " << s.params.omega0 << "\n";
  out << "r = " << s.params.r << "\n";
  out << "kBT = " << s.params.kBT << "\n";
  out << "gamma0 = " << s.params.gamma0 << "\n";
  out << "x0 = " << s.x0[0] << ", " << s.x0[1] << ", " << s.x0[2] << "\n";
  out << "tf = " << s.grid.tf << "\n";
  out << "n_steps = " << s.grid.n_steps << "\n";
  out << "theta = " << s.weights.theta << "\n";
  out << "relaxation = " << s.sweep.relaxation << "\n";
  out << "max_iters = " << s.sweep.max_iters << "\n";
  out << "tol_cost = " << s.sweep.tol_cost << "\n";
  out << "tol_control = " << s.sweep.tol_control << "\n";
  out << "max_step_halvings = " << s.sweep.max_step_halvings << "\n";
  out << "method = " << to_string(s.method) << "\n";
  return out.str();
}

}  // namespace qoc
