#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qmd/backend.hpp"
#include "qmd/forces.hpp"
#include "qmd/geomopt.hpp"
#include "qmd/md.hpp"
#include "qmd/molecule.hpp"
#include "qmd/pipeline.hpp"

namespace qmd {

inline constexpr int kConfigSchemaVersion = 1;

struct BackendConfig {
  std::string mode = "exact";
  std::int64_t shots = 8192;
  std::string noise_model;  // path; empty = shipped device model (noisy modes)
  double noise_scale = 1.0;
  bool depolarizing = true;
  bool thermal = true;
  bool readout = true;
  bool mitigation = false;
  std::int64_t calibration_shots = 1 << 17;
  std::uint64_t seed = 1;
};

struct OptimizerConfig {
  std::string method = "cobyla";
  double rho_begin = 0.5;
  double rho_end = 1e-4;
  int max_evaluations = 500;
};

struct ForceConfig {
  double delta_angstrom = 1e-3;
  std::string estimator = "HF-FD";
  std::string solver = "vqe";  // vqe | exact
  bool lanczos = false;
  double d_energy = -0.4;
  double d_forces = -0.1;
};

struct MDSection {
  double dt_fs = 0.2;
  int steps = 500;
  std::string integrator = "verlet";
  double temperature_k = 423.0;
  std::string variant = "standard";
  double equilibration_fs = 400.0;
  double external_noise = 0.0;
  std::vector<double> masses;  // electron masses; empty = proton mass per atom
};

struct ScanConfig {
  std::vector<double> bond_lengths;  // angstrom
  double r_min = 0.3;
  double r_max = 2.0;
  int points = 35;
  std::vector<double> d_values{-10.0, -2.0, -1.0, -0.75, -0.6, -0.4, -0.2, 0.0, 0.2, 0.5};
  int repeats = 5;
};

struct OptConfig {
  double initial_step = 0.2;
  double max_step = 0.4;
  double force_tol = 5e-4;
  int max_iterations = 500;
  std::optional<bool> noisy;  // default: true for shot modes
};

struct AblationConfig {
  std::vector<std::string> channels{"none", "depolarizing", "thermal", "readout", "all"};
  bool compare_mitigation = true;
};

struct AnalyzeConfig {
  std::string trajectory;
  int bins = 30;
  double equilibration_fs = 0.0;
};

/// Parsed run configuration. Relative paths are resolved against the
/// directory of the config file.
struct RunConfig {
  int schema = kConfigSchemaVersion;
  std::string label = "run";
  std::string molecule;
  std::string basis;  // empty = shipped STO-3G
  std::string mapping = "parity2";
  int ansatz_depth = 1;
  BackendConfig backend;
  OptimizerConfig optimizer;
  ForceConfig force;
  MDSection md;
  ScanConfig scan;
  OptConfig opt;
  AblationConfig ablation;
  AnalyzeConfig analyze;
  std::string output_dir = "out";

  /// Unknown keys, wrong types, bad enum strings and missing files throw ConfigError.
  static RunConfig from_json_text(const std::string& text, const std::filesystem::path& base_dir = ".");
  static RunConfig load(const std::filesystem::path& path);
  /// Fully resolved configuration, all defaults filled in (compact, one line).
  std::string to_json_text() const;

  /// Semantic checks that need the referenced files.
  void validate() const;

  Molecule load_molecule() const;
  ElementBasis load_basis() const;
  HamiltonianBuilder make_builder() const;
  QuantumBackend make_backend() const;
  Ansatz make_ansatz(int n_qubits) const;
  ForceFieldSettings force_field_settings() const;
  MDConfig md_config(std::size_t n_atoms) const;
  GeomOptSettings geomopt_settings() const;
};

}  // namespace qmd
