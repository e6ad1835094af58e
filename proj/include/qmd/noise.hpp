#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qmd {

struct QubitNoise {
  double t1_us = 0.0;
  double t2_us = 0.0;
  double freq_ghz = 0.0;
  double readout_error = 0.0;
  double u2_error = 0.0;
};

/// Per-gate relaxation data of one qubit for a given duration.
struct RelaxationChannel {
  double damping = 0.0;         // generalized amplitude damping probability
  double excited_population = 0.0;
  double dephasing = 0.0;       // phase-flip probability
};

/// Device noise description. Logical circuit qubit i runs on physical
/// qubit layout[i]. The three channel families can be switched off
/// independently for ablation studies.
class NoiseModel {
 public:
  std::vector<QubitNoise> qubits;
  std::map<std::pair<int, int>, double> cnot_errors;  // (control, target), physical
  double single_gate_ns = 35.0;
  double cnot_ns = 300.0;
  double readout_ns = 1000.0;
  double bath_temperature_k = 0.0;
  double scale = 1.0;
  std::vector<int> layout{0, 1};
  bool depolarizing = true;
  bool thermal = true;
  bool readout = true;

  static NoiseModel from_json_text(const std::string& text);
  static NoiseModel load(const std::string& path);
  std::string to_json_text() const;

  /// Throws ConfigError on T2 > 2 T1, probabilities outside [0,1], bad layout.
  void validate() const;
  void validate_for(int n_logical) const;

  int physical(int logical) const;

  /// Scaled error probabilities for logical qubits; 0 when the family is off.
  double single_gate_error(int q) const;
  double cnot_error(int control, int target) const;
  double readout_error(int q) const;
  RelaxationChannel relaxation(int q, double duration_ns) const;

  bool any_gate_noise() const { return depolarizing || thermal; }
  bool noiseless() const;

  NoiseModel with_scale(double s) const;
  /// Copy with only the named family active: "depolarizing", "thermal", "readout".
  NoiseModel only(const std::string& family) const;
};

/// The five-qubit device model shipped in data/ibmq_athens.json.
NoiseModel default_device_model();

}  // namespace qmd
