#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>

#include "json.hpp"
#include "qmd/basis.hpp"
#include "qmd/error.hpp"
#include "qmd/integrals.hpp"
#include "qmd/io.hpp"
#include "qmd/studies.hpp"

namespace qmd::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

RunConfig resolve_config(const std::string& path, const Overrides& o) {
  RunConfig cfg = RunConfig::load(path);
  if (o.out) cfg.output_dir = *o.out;
  if (o.seed) cfg.backend.seed = *o.seed;
  if (o.backend) cfg.backend.mode = *o.backend;
  cfg.validate();
  return cfg;
}

namespace {

json config_json(const RunConfig& cfg) { return json::parse(cfg.to_json_text()); }

fs::path artifact(const RunConfig& cfg, const std::string& command, const std::string& ext,
                  const std::string& suffix = {}) {
  const std::string label = suffix.empty() ? cfg.label : cfg.label + "-" + suffix;
  return fs::path(cfg.output_dir) / artifact_name(command, label, cfg.backend.seed, ext);
}

CsvTable table(const RunConfig& cfg, std::vector<std::string> columns) {
  CsvTable t;
  t.comments = {"config: " + cfg.to_json_text(), "seed: " + std::to_string(cfg.backend.seed)};
  t.columns = std::move(columns);
  return t;
}

void write_json(const fs::path& path, const RunConfig& cfg, json body) {
  body["config"] = config_json(cfg);
  body["seed"] = cfg.backend.seed;
  write_text(path, body.dump(2) + "\n");
  std::cout << path.string() << "\n";
}

void write_csv(const fs::path& path, const CsvTable& t) {
  t.write(path);
  std::cout << path.string() << "\n";
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json pauli_json(const PauliSum& h) {
  json a = json::array();
  for (const auto& t : h.terms()) a.push_back({{"pauli", t.string.word()}, {"coeff", t.coeff}});
  return a;
}

json tapering_json(const std::optional<TaperingSpec>& t) {
  if (!t || t->empty()) return nullptr;
  json g = json::array();
  for (const auto& p : t->generators) g.push_back(p.word());
  return {{"generators", g}, {"pivot_qubits", t->pivot_qubits}, {"sector", t->sector}};
}

json diagnostics_json(const std::optional<LanczosDiagnostics>& d) {
  if (!d) return nullptr;
  return {{"norm", d->norm}, {"energy", d->energy}, {"ratio", d->ratio}, {"condition_holds", d->condition_holds}};
}

std::vector<double> scan_bonds(const RunConfig& cfg) {
  if (!cfg.scan.bond_lengths.empty()) return cfg.scan.bond_lengths;
  if (cfg.scan.points < 2 || !(cfg.scan.r_max > cfg.scan.r_min) || cfg.scan.r_min <= 0.0)
    throw ConfigError("scan: need r_max > r_min > 0 and points >= 2");
  std::vector<double> b;
  for (int i = 0; i < cfg.scan.points; ++i)
    b.push_back(cfg.scan.r_min + (cfg.scan.r_max - cfg.scan.r_min) * i / (cfg.scan.points - 1));
  return b;
}

QuantumForceField force_field(const RunConfig& cfg, const Molecule& mol) {
  return make_force_field(cfg.make_builder(), mol, cfg.make_backend(), cfg.ansatz_depth, cfg.force_field_settings());
}

json summary_json(const TrajectoryReport& r) {
  json j{{"frames", r.frames},
         {"frames_used", r.frames_used},
         {"duration_fs", r.duration_fs},
         {"temperature_k", r.temperature.mean},
         {"temperature_error_k", r.temperature.error},
         {"e_tot_drift_ha", r.e_tot_drift},
         {"e_tot_end_change_ha", r.e_tot_end_change},
         {"bond_mean_angstrom", r.bond_mean},
         {"bond_modes", r.bond_modes}};
  j["e_kin_period_fs"] = r.e_kin_period_fs ? json(*r.e_kin_period_fs) : json(nullptr);
  if (r.bond_fit)
    j["bond_fit"] = {{"a", r.bond_fit->a},
                     {"b", r.bond_fit->b},
                     {"c", r.bond_fit->c},
                     {"sigma_b", r.bond_fit->sigma_b},
                     {"sigma_c", r.bond_fit->sigma_c}};
  else
    j["bond_fit"] = nullptr;
  return j;
}

}  // namespace

void cmd_integrals(const RunConfig& cfg) {
  const Molecule mol = cfg.load_molecule();
  const AOIntegrals ao = compute_ao_integrals(mol, build_basis(mol, cfg.load_basis()));
  HamiltonianBuilder builder = cfg.make_builder();
  const QubitProblem prob = builder.build(mol);
  const MOIntegrals& mo = prob.mo;
  const auto n = mo.n_orbitals();
  json g = json::array();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t)
        for (std::size_t u = 0; u < n; ++u)
          if (std::abs(mo.g(r, s, t, u)) > 1e-14) g.push_back({{"rstu", {r, s, t, u}}, {"value", mo.g(r, s, t, u)}});
  json body{{"command", "integrals"},
            {"nuclear_repulsion_ha", ao.nuclear_repulsion},
            {"overlap", matrix_json(ao.overlap)},
            {"hcore", matrix_json(ao.hcore)},
            {"hf_energy_ha", mo.hf_energy},
            {"scf_iterations", mo.iterations},
            {"orbital_energies_ha", vector_json(mo.orbital_energies)},
            {"mo_coefficients", matrix_json(mo.coefficients)},
            {"h_mo", matrix_json(mo.h)},
            {"g_mo", g},
            {"mapping", cfg.mapping},
            {"n_qubits", prob.hamiltonian.n_qubits()},
            {"qubit_hamiltonian", pauli_json(prob.hamiltonian)},
            {"tapering", tapering_json(builder.tapering())},
            {"exact_ground_energy_ha", exact_ground_energy(prob)}};
  write_json(artifact(cfg, "integrals", "json"), cfg, body);
}

void cmd_pes_scan(const RunConfig& cfg) {
  const auto bonds = scan_bonds(cfg);
  const auto points = pes_scan(cfg.make_builder(), bonds, cfg.force.delta_angstrom);
  CsvTable t = table(cfg, {"R_angstrom", "source", "estimator", "energy_ha", "fx0", "fy0", "fz0", "fx1", "fy1", "fz1",
                           "sx0", "sy0", "sz0", "sx1", "sy1", "sz1"});
  auto row = [&](double r, const std::string& src, const std::string& est, double e, const Eigen::VectorXd& f,
                 const Eigen::VectorXd& s) {
    std::vector<std::string> cells{format_number(r), src, est, format_number(e)};
    for (Eigen::Index i = 0; i < 6; ++i) cells.push_back(format_number(f[i]));
    for (Eigen::Index i = 0; i < 6; ++i) cells.push_back(format_number(s[i]));
    t.rows.push_back(cells);
  };
  HamiltonianBuilder builder = cfg.make_builder();
  const bool sampled = cfg.make_backend().sampled();
  json pts = json::array();
  double max_pulay = 0.0;
  for (const auto& p : points) {
    const ExactForceReport rep = exact_reference_force(make_h2(p.bond), cfg.force.delta_angstrom, builder);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(6);
    row(p.bond, "exact", "exact", rep.energy, rep.pes.forces, zero);
    row(p.bond, "mr", "HF-FD", rep.energy, rep.hellmann_feynman.forces, zero);
    if (p.bond >= 0.5 - 1e-12 && p.bond <= 1.5 + 1e-12) max_pulay = std::max(max_pulay, p.pulay_error);
    pts.push_back({{"R_angstrom", p.bond},
                   {"energy_ha", p.energy},
                   {"force_pes", p.force_pes},
                   {"force_hf", p.force_hf},
                   {"pulay_error", p.pulay_error},
                   {"degenerate", p.degenerate}});
  }
  if (sampled) {
    // Shot-based forces along the scan, warm-started point to point.
    QuantumForceField ff = force_field(cfg, make_h2(bonds.front()));
    for (double r : bonds) {
      const PointResult pr = ff.compute(make_h2(r));
      row(r, "vqe", to_string(pr.force.estimator), pr.energy, pr.force.forces,
          pr.force.covariance.diagonal().cwiseMax(0.0).cwiseSqrt());
    }
  }
  write_csv(artifact(cfg, "pes-scan", "csv"), t);
  write_json(artifact(cfg, "pes-scan", "json"), cfg,
             {{"command", "pes-scan"},
              {"minimum_angstrom", pes_minimum(points)},
              {"max_pulay_error_0.5_1.5", max_pulay},
              {"points", pts}});
}

void cmd_vqe(const RunConfig& cfg) {
  const Molecule mol = cfg.load_molecule();
  QuantumForceField ff = force_field(cfg, mol);
  const PointResult p = ff.compute(mol);
  HamiltonianBuilder ref = cfg.make_builder();
  const double e0 = exact_ground_energy(ref.build(mol));
  json body{{"command", "vqe"},
            {"n_qubits", p.n_qubits},
            {"energy_ha", p.energy},
            {"energy_sigma_ha", std::sqrt(std::max(p.energy_variance, 0.0))},
            {"exact_energy_ha", e0},
            {"forces_ha_per_angstrom", vector_json(p.force.forces)},
            {"force_covariance", matrix_json(p.force.covariance)},
            {"force_estimator", to_string(p.force.estimator)},
            {"parameters", p.vqe.parameters},
            {"evaluations", p.vqe.evaluations},
            {"converged", p.vqe.converged},
            {"warning", p.vqe.warning},
            {"energy_lanczos", diagnostics_json(p.energy_diagnostics)},
            {"force_lanczos", diagnostics_json(p.force_diagnostics)},
            {"tapering", tapering_json(ff.builder().tapering())},
            {"circuit_repetitions", ff.evaluator().circuit_repetitions()}};
  write_json(artifact(cfg, "vqe", "json"), cfg, body);
}

void cmd_lanczos_scan(const RunConfig& cfg) {
  std::vector<double> bonds = cfg.scan.bond_lengths;
  if (bonds.empty()) bonds = {0.6, 0.7, 0.9};
  const auto settings = cfg.force_field_settings();
  const auto rows = scan_lanczos_d(parse_mapping(cfg.mapping), bonds, cfg.scan.d_values, cfg.make_backend(),
                                   cfg.scan.repeats, cfg.ansatz_depth, settings.vqe);
  CsvTable t = table(cfg, {"R_angstrom", "d", "delta_e_ha", "sigma_e_ha", "mean_abs_error_ha", "condition_holds"});
  for (const auto& r : rows)
    t.rows.push_back({format_number(r.bond), format_number(r.d), format_number(r.error), format_number(r.sigma),
                      format_number(r.mean_abs_error), r.condition_holds ? "1" : "0"});
  write_csv(artifact(cfg, "lanczos-scan", "csv"), t);
}

void cmd_opt(const RunConfig& cfg) {
  const Molecule mol = cfg.load_molecule();
  QuantumForceField ff = force_field(cfg, mol);
  const GeomOptReport rep = geometry_optimize(mol, make_geometry_forces(ff), cfg.geomopt_settings());
  const auto names = internal_coordinate_names(mol);
  std::vector<std::string> cols{"iteration", "energy_ha", "max_force_ha_per_angstrom", "step", "accepted"};
  cols.insert(cols.end(), names.begin(), names.end());
  CsvTable t = table(cfg, cols);
  for (const auto& h : rep.history) {
    std::vector<std::string> cells{std::to_string(h.iteration), format_number(h.energy), format_number(h.max_force),
                                   format_number(h.step), h.accepted ? "1" : "0"};
    for (double v : h.internal) cells.push_back(format_number(v));
    t.rows.push_back(cells);
  }
  write_csv(artifact(cfg, "opt", "csv"), t);
  json internal;
  for (std::size_t i = 0; i < names.size(); ++i) internal[names[i]] = rep.internal[i];
  write_text(artifact(cfg, "opt", "xyz"), format_xyz(rep.geometry, "charge=" + std::to_string(mol.charge()) + " " +
                                                                        mol.label()));
  write_json(artifact(cfg, "opt", "json"), cfg,
             {{"command", "opt"},
              {"converged", rep.converged},
              {"iterations", rep.iterations},
              {"force_evaluations", rep.force_evaluations},
              {"internal_coordinates", internal},
              {"tapering", tapering_json(ff.builder().tapering())}});
}

void cmd_md(const RunConfig& cfg, bool langevin) {
  const std::string command = langevin ? "md-langevin" : "md-nve";
  const Molecule mol = cfg.load_molecule();
  MDConfig md = cfg.md_config(mol.size());
  md.integrator = langevin ? Integrator::Langevin : Integrator::Verlet;
  QuantumForceField ff = force_field(cfg, mol);
  const fs::path meta = artifact(cfg, command, "json");
  json body{{"command", command},
            {"integrator", langevin ? "langevin (semi-implicit Euler)" : "verlet (position only)"},
            {"verlet_variant", to_string(md.variant)},
            {"masses_me", md.masses},
            {"tapering", tapering_json(ff.builder().tapering())},
            {"status", "running"}};
  write_json(meta, cfg, body);
  TrajectoryWriter writer(artifact(cfg, command, "csv"), artifact(cfg, command, "xyz"), mol.size(),
                          "config: " + cfg.to_json_text());
  const Eigen::VectorXd r0 = mol.coordinates();
  const Eigen::VectorXd v0 = Eigen::VectorXd::Zero(r0.size());
  Trajectory traj;
  try {
    traj = langevin ? run_langevin(md, r0, v0, make_force_provider(ff, mol), writer.sink())
                    : run_nve(md, r0, v0, make_force_provider(ff, mol), writer.sink());
  } catch (const std::exception& e) {
    body["status"] = "failed";
    body["error"] = e.what();
    write_json(meta, cfg, body);
    throw;
  }
  body["status"] = "complete";
  body["circuit_repetitions"] = ff.evaluator().circuit_repetitions();
  if (traj.frames.size() >= 2) {
    try {
      body["summary"] = summary_json(analyze_trajectory(traj, langevin ? md.equilibration_fs : 0.0, 30, 2));
    } catch (const DomainError&) {
      body["summary"] = nullptr;
    }
  }
  write_json(meta, cfg, body);
  std::cout << artifact(cfg, command, "csv").string() << "\n" << artifact(cfg, command, "xyz").string() << "\n";
}

void cmd_noise_ablation(const RunConfig& cfg) {
  const Molecule mol = cfg.load_molecule();
  QuantumBackend noisy = cfg.make_backend();
  if (!noisy.noise) {
    // The ablation always runs on the noisy backend.
    RunConfig c = cfg;
    c.backend.mode = "noisy";
    noisy = c.make_backend();
  }
  const MDConfig md = cfg.md_config(mol.size());
  CsvTable t = table(cfg, {"channel", "mitigation", "epot_offset_ha", "ekin_decay_ha", "ekin_mean_ha"});
  for (const auto& ch : cfg.ablation.channels) {
    std::vector<bool> modes{false};
    if (cfg.ablation.compare_mitigation && (ch == "readout" || ch == "all")) modes.push_back(true);
    for (bool mit : modes) {
      const std::string tag = ch + (mit ? "-mitigated" : "");
      TrajectoryWriter writer(artifact(cfg, "noise-ablation", "csv", tag), artifact(cfg, "noise-ablation", "xyz", tag),
                              mol.size(), "config: " + cfg.to_json_text() + " channel: " + tag);
      const AblationRun run = run_ablation_channel(ch, mit, mol, cfg.make_builder(), noisy, cfg.ansatz_depth,
                                                   cfg.force_field_settings(), md, writer.sink());
      t.rows.push_back({ch, mit ? "1" : "0", format_number(run.epot_offset), format_number(run.ekin_decay),
                        format_number(run.ekin_mean)});
    }
  }
  write_csv(artifact(cfg, "noise-ablation", "csv"), t);
}

void cmd_analyze(const RunConfig& cfg) {
  if (cfg.analyze.trajectory.empty()) throw ConfigError("analyze: 'analyze.trajectory' is required");
  const Trajectory traj = read_trajectory_csv(cfg.analyze.trajectory);
  TrajectoryReport rep;
  try {
    rep = analyze_trajectory(traj, cfg.analyze.equilibration_fs, cfg.analyze.bins);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("analyze: ") + e.what());
  }
  CsvTable hist = table(cfg, {"bond_angstrom", "count", "density"});
  for (std::size_t i = 0; i < rep.bond_histogram.counts.size(); ++i)
    hist.rows.push_back({format_number(rep.bond_histogram.center(i)), format_number(rep.bond_histogram.counts[i]),
                         format_number(rep.bond_histogram.density[i])});
  // Phase space: bond coordinate and relative momentum (m_e * angstrom/fs) per frame,
  // plus per-atom positions and momenta.
  std::vector<std::string> cols{"step", "t_fs"};
  const std::size_t na = traj.masses.size();
  for (std::size_t a = 0; a < na; ++a)
    for (const char* b : {"x", "y", "z", "px", "py", "pz"}) cols.push_back(std::string(b) + std::to_string(a));
  CsvTable phase = table(cfg, cols);
  for (const auto& f : traj.frames) {
    std::vector<std::string> cells{std::to_string(f.step), format_number(f.t_fs)};
    for (std::size_t a = 0; a < na; ++a) {
      const auto i = static_cast<Eigen::Index>(3 * a);
      for (int k = 0; k < 3; ++k) cells.push_back(format_number(f.positions[i + k]));
      for (int k = 0; k < 3; ++k) cells.push_back(format_number(traj.masses[a] * f.velocities[i + k]));
    }
    phase.rows.push_back(cells);
  }
  write_csv(artifact(cfg, "analyze", "csv", "histogram"), hist);
  write_csv(artifact(cfg, "analyze", "csv", "phase"), phase);
  write_json(artifact(cfg, "analyze", "json"), cfg, {{"command", "analyze"}, {"summary", summary_json(rep)}});
}

}  // namespace qmd::cli
