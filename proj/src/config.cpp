#include "qdcluster/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "qdcluster/constants.hpp"

namespace qdc {

namespace {

const std::map<std::string, std::string>& default_map() {
  static const std::map<std::string, std::string> d = {
      // double dot
      {"t_c_uev", "5.0"},
      {"delta_uev", "0.0"},
      // resonator circuit
      {"f_res_hz", "2e9"},
      {"c_c_farad", "400e-18"},
      {"c_tot_farad", "200e-18"},
      {"z0_ohm", "50.0"},
      {"r_q_ohm", "25812.807"},
      {"quality_factor", "1e5"},
      // decoherence inputs
      {"t2_star_s", "1e-6"},
      {"t1_s", "1e-6"},
      {"t2_bare_s", "1e-8"},
      {"omega_gap_uev", "10.0"},
      // schedule; g0_over_2pi_hz = 0 means "derive from the circuit"
      {"k", "1"},
      {"n", "0"},
      {"n_qubits", "2"},
      {"fock_cutoff", "5"},
      {"g0_over_2pi_hz", "0"},
      // noise
      {"sigma_rad", "0.07225663103256523"},   // 0.023 pi
      {"sigma1_rad", "0.06911503837897545"},  // 0.022 pi
      {"sigma2_rad", "0.018849555921538763"}, // 0.006 pi
      {"drive_rel_fluct", "0.02"},
      {"spec_cutoff_rad_s", "1e6"},
      {"spec_amplitude", "0"},  // 0 means "derive from t2_bare_s"
      // monte carlo
      {"seed", "12345"},
      {"mc_samples", "0"},
      {"mc_batches", "10"},
      {"threads", "1"},
      {"model", "bond_phase"},
      {"graph", "chain"},
      // fidelity curve
      {"n_min", "2"},
      {"n_max", "30"},
      // command behavior
      {"out", ""},
      {"budget_margin", "10"},
      {"budget_gate", "true"},
      {"unsafe_dims", "false"},
      {"evolve_steps", "2000"},
  };
  return d;
}

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

RunConfig::RunConfig() : kv_(default_map()) {}

const std::vector<std::string>& RunConfig::known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [key, _] : default_map()) k.push_back(key);
    return k;
  }();
  return keys;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      cfg.set(key, value);
    } catch (const config_error& e) {
      throw config_error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (kv_.find(key) == kv_.end()) throw config_error("unknown config key: " + key);
  kv_[key] = value;
}

double RunConfig::get_double(const std::string& key) const {
  const std::string& v = get_string(key);
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "': not a number: '" + v + "'");
  }
}

long RunConfig::get_long(const std::string& key) const {
  const std::string& v = get_string(key);
  try {
    size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "': not an integer: '" + v + "'");
  }
}

int RunConfig::get_int(const std::string& key) const {
  return static_cast<int>(get_long(key));
}

std::uint64_t RunConfig::get_u64(const std::string& key) const {
  const std::string& v = get_string(key);
  try {
    size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<std::uint64_t>(x);
  } catch (const std::exception&) {
    throw config_error("config key '" + key + "': not an unsigned integer: '" + v + "'");
  }
}

bool RunConfig::get_bool(const std::string& key) const {
  const std::string& v = get_string(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw config_error("config key '" + key + "': not a boolean: '" + v + "'");
}

const std::string& RunConfig::get_string(const std::string& key) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) throw config_error("unknown config key: " + key);
  return it->second;
}

void RunConfig::echo(std::ostream& os) const {
  for (const auto& [k, v] : kv_) os << k << " = " << v << "\n";
}

}  // namespace qdc
