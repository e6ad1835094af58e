#include "qmd/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qmd/error.hpp"
#include "qmd/units.hpp"

#ifndef QMD_DATA_DIR
#define QMD_DATA_DIR "data"
#endif

namespace qmd {

namespace {

using json = nlohmann::json;

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError("config: '" + where + "' must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
  }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: wrong type for '" + where + "." + key + "'");
  }
}

std::string resolve(const std::string& p, const std::filesystem::path& base) {
  if (p.empty()) return p;
  std::filesystem::path path(p);
  if (path.is_relative()) path = base / path;
  return path.lexically_normal().string();
}

void require_file(const std::string& p, const std::string& what) {
  if (!std::filesystem::is_regular_file(p)) throw ConfigError("config: " + what + " file not found: " + p);
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  reject_unknown(j,
                 {"schema", "label", "molecule", "basis", "mapping", "ansatz_depth", "backend", "optimizer", "force",
                  "md", "scan", "opt", "ablation", "analyze", "output_dir"},
                 "top level");
  RunConfig c;
  if (!j.contains("schema")) throw ConfigError("config: missing 'schema' (expected " + std::to_string(kConfigSchemaVersion) + ")");
  read(j, "schema", c.schema, "");
  if (c.schema != kConfigSchemaVersion)
    throw ConfigError("config: unsupported schema " + std::to_string(c.schema) + " (expected " +
                      std::to_string(kConfigSchemaVersion) + ")");
  read(j, "label", c.label, "");
  read(j, "molecule", c.molecule, "");
  read(j, "basis", c.basis, "");
  read(j, "mapping", c.mapping, "");
  read(j, "ansatz_depth", c.ansatz_depth, "");
  read(j, "output_dir", c.output_dir, "");

  if (j.contains("backend")) {
    const auto& b = j["backend"];
    reject_unknown(b,
                   {"mode", "shots", "noise_model", "noise_scale", "channels", "mitigation", "calibration_shots",
                    "seed"},
                   "backend");
    read(b, "mode", c.backend.mode, "backend");
    read(b, "shots", c.backend.shots, "backend");
    read(b, "noise_model", c.backend.noise_model, "backend");
    read(b, "noise_scale", c.backend.noise_scale, "backend");
    read(b, "mitigation", c.backend.mitigation, "backend");
    read(b, "calibration_shots", c.backend.calibration_shots, "backend");
    read(b, "seed", c.backend.seed, "backend");
    if (b.contains("channels")) {
      const auto& ch = b["channels"];
      reject_unknown(ch, {"depolarizing", "thermal", "readout"}, "backend.channels");
      read(ch, "depolarizing", c.backend.depolarizing, "backend.channels");
      read(ch, "thermal", c.backend.thermal, "backend.channels");
      read(ch, "readout", c.backend.readout, "backend.channels");
    }
  }
  if (j.contains("optimizer")) {
    const auto& o = j["optimizer"];
    reject_unknown(o, {"method", "rho_begin", "rho_end", "max_evaluations"}, "optimizer");
    read(o, "method", c.optimizer.method, "optimizer");
    read(o, "rho_begin", c.optimizer.rho_begin, "optimizer");
    read(o, "rho_end", c.optimizer.rho_end, "optimizer");
    read(o, "max_evaluations", c.optimizer.max_evaluations, "optimizer");
  }
  if (j.contains("force")) {
    const auto& f = j["force"];
    reject_unknown(f, {"delta_angstrom", "estimator", "solver", "lanczos"}, "force");
    read(f, "delta_angstrom", c.force.delta_angstrom, "force");
    read(f, "estimator", c.force.estimator, "force");
    read(f, "solver", c.force.solver, "force");
    if (f.contains("lanczos")) {
      const auto& l = f["lanczos"];
      reject_unknown(l, {"enabled", "d_energy", "d_forces"}, "force.lanczos");
      read(l, "enabled", c.force.lanczos, "force.lanczos");
      read(l, "d_energy", c.force.d_energy, "force.lanczos");
      read(l, "d_forces", c.force.d_forces, "force.lanczos");
    }
  }
  if (j.contains("md")) {
    const auto& m = j["md"];
    reject_unknown(m,
                   {"dt_fs", "steps", "integrator", "temperature_k", "variant", "equilibration_fs", "external_noise",
                    "masses"},
                   "md");
    read(m, "dt_fs", c.md.dt_fs, "md");
    read(m, "steps", c.md.steps, "md");
    read(m, "integrator", c.md.integrator, "md");
    read(m, "temperature_k", c.md.temperature_k, "md");
    read(m, "variant", c.md.variant, "md");
    read(m, "equilibration_fs", c.md.equilibration_fs, "md");
    read(m, "external_noise", c.md.external_noise, "md");
    read(m, "masses", c.md.masses, "md");
  }
  if (j.contains("scan")) {
    const auto& s = j["scan"];
    reject_unknown(s, {"bond_lengths", "r_min", "r_max", "points", "d_values", "repeats"}, "scan");
    read(s, "bond_lengths", c.scan.bond_lengths, "scan");
    read(s, "r_min", c.scan.r_min, "scan");
    read(s, "r_max", c.scan.r_max, "scan");
    read(s, "points", c.scan.points, "scan");
    read(s, "d_values", c.scan.d_values, "scan");
    read(s, "repeats", c.scan.repeats, "scan");
  }
  if (j.contains("opt")) {
    const auto& o = j["opt"];
    reject_unknown(o, {"initial_step", "max_step", "force_tol", "max_iterations", "noisy"}, "opt");
    read(o, "initial_step", c.opt.initial_step, "opt");
    read(o, "max_step", c.opt.max_step, "opt");
    read(o, "force_tol", c.opt.force_tol, "opt");
    read(o, "max_iterations", c.opt.max_iterations, "opt");
    if (o.contains("noisy")) {
      bool v = false;
      read(o, "noisy", v, "opt");
      c.opt.noisy = v;
    }
  }
  if (j.contains("ablation")) {
    const auto& a = j["ablation"];
    reject_unknown(a, {"channels", "compare_mitigation"}, "ablation");
    read(a, "channels", c.ablation.channels, "ablation");
    read(a, "compare_mitigation", c.ablation.compare_mitigation, "ablation");
  }
  if (j.contains("analyze")) {
    const auto& a = j["analyze"];
    reject_unknown(a, {"trajectory", "bins", "equilibration_fs"}, "analyze");
    read(a, "trajectory", c.analyze.trajectory, "analyze");
    read(a, "bins", c.analyze.bins, "analyze");
    read(a, "equilibration_fs", c.analyze.equilibration_fs, "analyze");
  }

  c.molecule = resolve(c.molecule, base_dir);
  c.basis = resolve(c.basis, base_dir);
  c.backend.noise_model = resolve(c.backend.noise_model, base_dir);
  c.analyze.trajectory = resolve(c.analyze.trajectory, base_dir);
  c.output_dir = resolve(c.output_dir, base_dir);
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return from_json_text(ss.str(), base);
}

std::string RunConfig::to_json_text() const {
  json j;
  j["schema"] = schema;
  j["label"] = label;
  j["molecule"] = molecule;
  j["basis"] = basis.empty() ? std::string(QMD_DATA_DIR) + "/sto-3g.json" : basis;
  j["mapping"] = mapping;
  j["ansatz_depth"] = ansatz_depth;
  j["backend"] = {{"mode", backend.mode},
                  {"shots", backend.shots},
                  {"noise_model", backend.noise_model},
                  {"noise_scale", backend.noise_scale},
                  {"channels",
                   {{"depolarizing", backend.depolarizing}, {"thermal", backend.thermal}, {"readout", backend.readout}}},
                  {"mitigation", backend.mitigation},
                  {"calibration_shots", backend.calibration_shots},
                  {"seed", backend.seed}};
  j["optimizer"] = {{"method", optimizer.method},
                    {"rho_begin", optimizer.rho_begin},
                    {"rho_end", optimizer.rho_end},
                    {"max_evaluations", optimizer.max_evaluations}};
  j["force"] = {{"delta_angstrom", force.delta_angstrom},
                {"estimator", force.estimator},
                {"solver", force.solver},
                {"lanczos", {{"enabled", force.lanczos}, {"d_energy", force.d_energy}, {"d_forces", force.d_forces}}}};
  j["md"] = {{"dt_fs", md.dt_fs},
             {"steps", md.steps},
             {"integrator", md.integrator},
             {"temperature_k", md.temperature_k},
             {"variant", md.variant},
             {"equilibration_fs", md.equilibration_fs},
             {"external_noise", md.external_noise},
             {"masses", md.masses}};
  j["scan"] = {{"bond_lengths", scan.bond_lengths}, {"r_min", scan.r_min},       {"r_max", scan.r_max},
               {"points", scan.points},             {"d_values", scan.d_values}, {"repeats", scan.repeats}};
  j["opt"] = {{"initial_step", opt.initial_step},
              {"max_step", opt.max_step},
              {"force_tol", opt.force_tol},
              {"max_iterations", opt.max_iterations}};
  if (opt.noisy) j["opt"]["noisy"] = *opt.noisy;
  j["ablation"] = {{"channels", ablation.channels}, {"compare_mitigation", ablation.compare_mitigation}};
  j["analyze"] = {{"trajectory", analyze.trajectory},
                  {"bins", analyze.bins},
                  {"equilibration_fs", analyze.equilibration_fs}};
  j["output_dir"] = output_dir;
  return j.dump();
}

void RunConfig::validate() const {
  parse_mapping(mapping);
  parse_backend_mode(backend.mode);
  parse_optimizer_method(optimizer.method);
  parse_force_estimator(force.estimator);
  parse_verlet_variant(md.variant);
  if (force.solver != "vqe" && force.solver != "exact")
    throw ConfigError("config: force.solver must be 'vqe' or 'exact', got '" + force.solver + "'");
  if (md.integrator != "verlet" && md.integrator != "langevin")
    throw ConfigError("config: md.integrator must be 'verlet' or 'langevin', got '" + md.integrator + "'");
  if (ansatz_depth < 0) throw ConfigError("config: ansatz_depth must be >= 0");
  if (!(force.delta_angstrom >= 1e-5 && force.delta_angstrom <= 1e-1))
    throw ConfigError("config: force.delta_angstrom must lie in [1e-5, 1e-1]");
  if (!molecule.empty()) require_file(molecule, "molecule");
  if (!basis.empty()) require_file(basis, "basis");
  if (!backend.noise_model.empty()) require_file(backend.noise_model, "noise model");
  if (!(backend.noise_scale >= 0.0)) throw ConfigError("config: backend.noise_scale must be >= 0");
  make_backend().validate();
  if (force.solver == "exact" && parse_backend_mode(backend.mode) != BackendMode::Exact)
    throw ConfigError("config: force.solver 'exact' requires the exact backend");
  if (!molecule.empty()) {
    const Molecule mol = load_molecule();
    if (parse_mapping(mapping) == MappingKind::HcbTaper && mol.n_electrons() % 2 != 0)
      throw ConfigError("config: hcb+taper needs a closed-shell molecule");
    if (!md.masses.empty() && md.masses.size() != mol.size())
      throw ConfigError("config: md.masses must list one mass per atom");
  }
}

Molecule RunConfig::load_molecule() const {
  if (molecule.empty()) throw ConfigError("config: 'molecule' path is required for this command");
  require_file(molecule, "molecule");
  try {
    return read_xyz(molecule);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: bad molecule file: ") + e.what());
  }
}

ElementBasis RunConfig::load_basis() const {
  if (basis.empty()) return sto3g_hydrogen();
  require_file(basis, "basis");
  return load_hydrogen_basis(basis);
}

HamiltonianBuilder RunConfig::make_builder() const { return HamiltonianBuilder(parse_mapping(mapping), load_basis()); }

QuantumBackend RunConfig::make_backend() const {
  QuantumBackend b;
  b.mode = parse_backend_mode(backend.mode);
  b.shots = backend.shots;
  b.mitigation = backend.mitigation;
  b.calibration_shots = backend.calibration_shots;
  b.seed = backend.seed;
  if (b.mode == BackendMode::NoisyShots) {
    NoiseModel m = backend.noise_model.empty() ? default_device_model() : NoiseModel::load(backend.noise_model);
    m = m.with_scale(backend.noise_scale * m.scale);
    m.depolarizing = m.depolarizing && backend.depolarizing;
    m.thermal = m.thermal && backend.thermal;
    m.readout = m.readout && backend.readout;
    b.noise = std::move(m);
  }
  return b;
}

Ansatz RunConfig::make_ansatz(int n_qubits) const { return Ansatz{n_qubits, ansatz_depth}; }

ForceFieldSettings RunConfig::force_field_settings() const {
  ForceFieldSettings s;
  s.delta = force.delta_angstrom;
  s.estimator = parse_force_estimator(force.estimator);
  s.lanczos.enabled = force.lanczos;
  s.lanczos.d_energy = force.d_energy;
  s.lanczos.d_forces = force.d_forces;
  s.solver = force.solver == "exact" ? GroundStateSolver::Exact : GroundStateSolver::Vqe;
  s.vqe.optimizer.method = parse_optimizer_method(optimizer.method);
  s.vqe.optimizer.rho_begin = optimizer.rho_begin;
  s.vqe.optimizer.rho_end = optimizer.rho_end;
  s.vqe.optimizer.max_evaluations = optimizer.max_evaluations;
  return s;
}

MDConfig RunConfig::md_config(std::size_t n_atoms) const {
  MDConfig m;
  m.dt_fs = md.dt_fs;
  m.steps = md.steps;
  m.masses = md.masses.empty() ? std::vector<double>(n_atoms, units::kProtonMassAu) : md.masses;
  m.integrator = md.integrator == "langevin" ? Integrator::Langevin : Integrator::Verlet;
  m.temperature_k = md.temperature_k;
  m.variant = parse_verlet_variant(md.variant);
  m.seed = backend.seed;
  m.equilibration_fs = md.equilibration_fs;
  m.external_noise = md.external_noise;
  m.validate(n_atoms);
  return m;
}

GeomOptSettings RunConfig::geomopt_settings() const {
  GeomOptSettings s;
  s.initial_step = opt.initial_step;
  s.max_step = opt.max_step;
  s.force_tol = opt.force_tol;
  s.max_iterations = opt.max_iterations;
  s.noisy = opt.noisy.value_or(parse_backend_mode(backend.mode) != BackendMode::Exact);
  return s;
}

}  // namespace qmd
