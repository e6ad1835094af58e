#include "qmd/noise.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qmd/error.hpp"

#ifndef QMD_DATA_DIR
#define QMD_DATA_DIR "data"
#endif

namespace qmd {

namespace {

using json = nlohmann::json;

constexpr double kPlanckJs = 6.62607015e-34;
constexpr double kBoltzmannJK = 1.380649e-23;

void check_prob(double p, const std::string& what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("noise model: " + what + " = " + std::to_string(p) + " outside [0,1]");
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError("noise model: unknown key '" + it.key() + "' in " + where);
  }
}

std::pair<int, int> parse_edge(const std::string& key) {
  const auto us = key.find('_');
  try {
    if (us == std::string::npos) throw std::invalid_argument(key);
    return {std::stoi(key.substr(0, us)), std::stoi(key.substr(us + 1))};
  } catch (const std::exception&) {
    throw ConfigError("noise model: bad CNOT edge key '" + key + "' (expected \"c_t\")");
  }
}

}  // namespace

NoiseModel NoiseModel::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("noise model: invalid JSON: ") + e.what());
  }
  reject_unknown(j,
                 {"name", "qubits", "cnot_errors", "durations_ns", "scale", "bath_temperature_k", "layout",
                  "channels"},
                 "top level");
  NoiseModel m;
  try {
    for (const auto& q : j.at("qubits")) {
      reject_unknown(q, {"t1_us", "t2_us", "freq_ghz", "readout_error", "u2_error"}, "qubit entry");
      QubitNoise n;
      n.t1_us = q.at("t1_us").get<double>();
      n.t2_us = q.at("t2_us").get<double>();
      n.freq_ghz = q.at("freq_ghz").get<double>();
      n.readout_error = q.at("readout_error").get<double>();
      n.u2_error = q.at("u2_error").get<double>();
      m.qubits.push_back(n);
    }
    if (j.contains("cnot_errors"))
      for (auto it = j["cnot_errors"].begin(); it != j["cnot_errors"].end(); ++it)
        m.cnot_errors[parse_edge(it.key())] = it.value().get<double>();
    if (j.contains("durations_ns")) {
      const auto& d = j["durations_ns"];
      reject_unknown(d, {"u", "cx", "readout"}, "durations_ns");
      m.single_gate_ns = d.value("u", m.single_gate_ns);
      m.cnot_ns = d.value("cx", m.cnot_ns);
      m.readout_ns = d.value("readout", m.readout_ns);
    }
    m.scale = j.value("scale", 1.0);
    m.bath_temperature_k = j.value("bath_temperature_k", 0.0);
    if (j.contains("layout")) m.layout = j["layout"].get<std::vector<int>>();
    if (j.contains("channels")) {
      const auto& c = j["channels"];
      reject_unknown(c, {"depolarizing", "thermal", "readout"}, "channels");
      m.depolarizing = c.value("depolarizing", true);
      m.thermal = c.value("thermal", true);
      m.readout = c.value("readout", true);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("noise model: ") + e.what());
  }
  m.validate();
  return m;
}

NoiseModel NoiseModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open noise model file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string NoiseModel::to_json_text() const {
  json j;
  j["qubits"] = json::array();
  for (const auto& q : qubits)
    j["qubits"].push_back({{"t1_us", q.t1_us},
                           {"t2_us", q.t2_us},
                           {"freq_ghz", q.freq_ghz},
                           {"readout_error", q.readout_error},
                           {"u2_error", q.u2_error}});
  j["cnot_errors"] = json::object();
  for (const auto& [e, p] : cnot_errors) j["cnot_errors"][std::to_string(e.first) + "_" + std::to_string(e.second)] = p;
  j["durations_ns"] = {{"u", single_gate_ns}, {"cx", cnot_ns}, {"readout", readout_ns}};
  j["scale"] = scale;
  j["bath_temperature_k"] = bath_temperature_k;
  j["layout"] = layout;
  j["channels"] = {{"depolarizing", depolarizing}, {"thermal", thermal}, {"readout", readout}};
  return j.dump(2);
}

void NoiseModel::validate() const {
  if (qubits.empty()) throw ConfigError("noise model: no qubits");
  if (!(scale >= 0.0)) throw ConfigError("noise model: scale must be non-negative");
  if (!(bath_temperature_k >= 0.0)) throw ConfigError("noise model: negative bath temperature");
  if (!(single_gate_ns >= 0.0 && cnot_ns >= 0.0 && readout_ns >= 0.0))
    throw ConfigError("noise model: negative gate duration");
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    const auto& q = qubits[i];
    const std::string tag = "qubit " + std::to_string(i);
    if (!(q.t1_us > 0.0 && q.t2_us > 0.0)) throw ConfigError("noise model: " + tag + " needs positive T1 and T2");
    if (q.t2_us > 2.0 * q.t1_us) throw ConfigError("noise model: " + tag + " violates T2 <= 2 T1");
    if (!(q.freq_ghz > 0.0)) throw ConfigError("noise model: " + tag + " needs a positive frequency");
    check_prob(q.readout_error * scale, tag + " scaled readout error");
    check_prob(q.u2_error * scale, tag + " scaled U2 error");
  }
  for (const auto& [e, p] : cnot_errors) {
    if (e.first < 0 || e.second < 0 || e.first >= static_cast<int>(qubits.size()) ||
        e.second >= static_cast<int>(qubits.size()) || e.first == e.second)
      throw ConfigError("noise model: invalid CNOT edge");
    check_prob(p * scale, "scaled CNOT error");
  }
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout[i] < 0 || layout[i] >= static_cast<int>(qubits.size()))
      throw ConfigError("noise model: layout entry out of range");
    for (std::size_t k = 0; k < i; ++k)
      if (layout[k] == layout[i]) throw ConfigError("noise model: layout repeats a physical qubit");
  }
}

void NoiseModel::validate_for(int n_logical) const {
  validate();
  if (static_cast<int>(layout.size()) < n_logical)
    throw ConfigError("noise model: layout has " + std::to_string(layout.size()) + " qubits, circuit needs " +
                      std::to_string(n_logical));
}

int NoiseModel::physical(int logical) const {
  if (logical < 0 || logical >= static_cast<int>(layout.size()))
    throw ConfigError("noise model: logical qubit " + std::to_string(logical) + " not in layout");
  return layout[static_cast<std::size_t>(logical)];
}

double NoiseModel::single_gate_error(int q) const {
  return depolarizing ? scale * qubits[static_cast<std::size_t>(physical(q))].u2_error : 0.0;
}

double NoiseModel::cnot_error(int control, int target) const {
  if (!depolarizing) return 0.0;
  const int pc = physical(control), pt = physical(target);
  auto it = cnot_errors.find({pc, pt});
  if (it == cnot_errors.end()) it = cnot_errors.find({pt, pc});
  if (it == cnot_errors.end())
    throw ConfigError("noise model: no CNOT error for physical edge " + std::to_string(pc) + "_" + std::to_string(pt));
  return scale * it->second;
}

double NoiseModel::readout_error(int q) const {
  return readout ? scale * qubits[static_cast<std::size_t>(physical(q))].readout_error : 0.0;
}

RelaxationChannel NoiseModel::relaxation(int q, double duration_ns) const {
  RelaxationChannel r;
  if (!thermal || duration_ns <= 0.0) return r;
  const QubitNoise& p = qubits[static_cast<std::size_t>(physical(q))];
  const double t_us = duration_ns * 1e-3;
  r.damping = scale * (1.0 - std::exp(-t_us / p.t1_us));
  // Amplitude damping alone decays coherences by exp(-t/2T1); the rest
  // of the T2 decay is pure dephasing.
  const double extra = std::exp(-t_us / p.t2_us + t_us / (2.0 * p.t1_us));
  r.dephasing = scale * 0.5 * (1.0 - extra);
  if (bath_temperature_k > 0.0) {
    const double x = kPlanckJs * p.freq_ghz * 1e9 / (kBoltzmannJK * bath_temperature_k);
    r.excited_population = 1.0 / (std::exp(x) + 1.0);
  }
  return r;
}

bool NoiseModel::noiseless() const {
  if (scale == 0.0) return true;
  return !depolarizing && !thermal && !readout;
}

NoiseModel NoiseModel::with_scale(double s) const {
  NoiseModel m = *this;
  m.scale = s;
  m.validate();
  return m;
}

NoiseModel NoiseModel::only(const std::string& family) const {
  NoiseModel m = *this;
  m.depolarizing = family == "depolarizing";
  m.thermal = family == "thermal";
  m.readout = family == "readout";
  if (!m.depolarizing && !m.thermal && !m.readout)
    throw ConfigError("unknown noise family '" + family + "' (expected depolarizing, thermal or readout)");
  return m;
}

NoiseModel default_device_model() { return NoiseModel::load(std::string(QMD_DATA_DIR) + "/ibmq_athens.json"); }

}  // namespace qmd
