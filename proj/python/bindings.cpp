#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmd/analysis.hpp"
#include "qmd/config.hpp"
#include "qmd/error.hpp"
#include "qmd/md.hpp"
#include "qmd/studies.hpp"

namespace py = pybind11;
using namespace qmd;

namespace {

// Keyword options mapped onto the same RunConfig the command-line driver uses,
// so defaults and validation are shared.
RunConfig options(const std::string& mapping, const std::string& backend, std::int64_t shots, std::uint64_t seed,
                  bool mitigation, double noise_scale, bool lanczos, double d_energy, double d_forces,
                  const std::string& solver, double delta) {
  RunConfig c;
  c.mapping = mapping;
  c.backend.mode = backend;
  c.backend.shots = shots;
  c.backend.seed = seed;
  c.backend.mitigation = mitigation;
  c.backend.noise_scale = noise_scale;
  c.force.lanczos = lanczos;
  c.force.d_energy = d_energy;
  c.force.d_forces = d_forces;
  c.force.solver = solver;
  c.force.delta_angstrom = delta;
  c.validate();
  return c;
}

class PyForceField {
 public:
  PyForceField(const Molecule& mol, RunConfig cfg)
      : shape_(mol), ff_(make_force_field(cfg.make_builder(), mol, cfg.make_backend(), cfg.ansatz_depth,
                                          cfg.force_field_settings())) {
    mol.validate();
  }

  py::dict compute(const Eigen::VectorXd& coordinates) {
    const PointResult p = ff_.compute(shape_.with_coordinates(coordinates));
    py::dict d;
    d["energy"] = p.energy;
    d["energy_variance"] = p.energy_variance;
    d["forces"] = p.force.forces;
    d["covariance"] = p.force.covariance;
    d["parameters"] = p.vqe.parameters;
    d["evaluations"] = p.vqe.evaluations;
    d["n_qubits"] = p.n_qubits;
    return d;
  }

  ForceProvider provider() { return make_force_provider(ff_, shape_); }
  const Molecule& shape() const { return shape_; }
  std::int64_t repetitions() { return ff_.evaluator().circuit_repetitions(); }
  void reset() { ff_.reset(); }

 private:
  Molecule shape_;
  QuantumForceField ff_;
};

MDConfig md_options(const PyForceField& ff, int steps, double dt_fs, double temperature_k, std::uint64_t seed,
                    double equilibration_fs) {
  RunConfig c;
  c.md.steps = steps;
  c.md.dt_fs = dt_fs;
  c.md.temperature_k = temperature_k;
  c.md.equilibration_fs = equilibration_fs;
  MDConfig m = c.md_config(ff.shape().size());
  m.seed = seed;
  return m;
}

py::dict trajectory_dict(const Trajectory& t) {
  const auto n = static_cast<Eigen::Index>(t.frames.size());
  const Eigen::Index dof = n ? t.frames.front().positions.size() : 0;
  Eigen::VectorXd time(n), epot(n), ekin(n), etot(n), temp(n);
  Eigen::MatrixXd pos(n, dof), vel(n, dof), frc(n, dof);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& f = t.frames[static_cast<std::size_t>(i)];
    time[i] = f.t_fs;
    epot[i] = f.e_pot;
    ekin[i] = f.e_kin;
    etot[i] = f.e_tot;
    temp[i] = f.temperature_k;
    pos.row(i) = f.positions.transpose();
    vel.row(i) = f.velocities.transpose();
    frc.row(i) = f.forces.transpose();
  }
  py::dict d;
  d["t_fs"] = time;
  d["positions"] = pos;
  d["velocities"] = vel;
  d["forces"] = frc;
  d["e_pot"] = epot;
  d["e_kin"] = ekin;
  d["e_tot"] = etot;
  d["temperature_k"] = temp;
  d["masses"] = t.masses;
  return d;
}

Trajectory trajectory_from(const py::dict& d) {
  Trajectory t;
  t.masses = d["masses"].cast<std::vector<double>>();
  const auto time = d["t_fs"].cast<Eigen::VectorXd>();
  const auto pos = d["positions"].cast<Eigen::MatrixXd>();
  const auto vel = d["velocities"].cast<Eigen::MatrixXd>();
  const auto epot = d["e_pot"].cast<Eigen::VectorXd>();
  const auto ekin = d["e_kin"].cast<Eigen::VectorXd>();
  for (Eigen::Index i = 0; i < time.size(); ++i) {
    TrajectoryFrame f;
    f.step = static_cast<int>(i);
    f.t_fs = time[i];
    f.positions = pos.row(i).transpose();
    f.velocities = vel.row(i).transpose();
    f.e_pot = epot[i];
    f.e_kin = ekin[i];
    f.e_tot = f.e_pot + f.e_kin;
    f.temperature_k = kinetic_temperature(f.e_kin, static_cast<int>(f.positions.size()));
    t.frames.push_back(std::move(f));
  }
  return t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Molecular dynamics of small hydrogen systems on simulated VQE forces";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);

  py::class_<Molecule>(m, "Molecule")
      .def_static("h2", &make_h2, py::arg("bond"))
      .def_static("h3plus", &make_h3plus, py::arg("r01"), py::arg("r02"), py::arg("angle_deg"))
      .def_static("from_xyz", &parse_xyz, py::arg("text"))
      .def_static("read_xyz", [](const std::string& p) { return read_xyz(p); }, py::arg("path"))
      .def_property_readonly("coordinates", &Molecule::coordinates)
      .def_property_readonly("charge", &Molecule::charge)
      .def_property_readonly("label", &Molecule::label)
      .def_property_readonly("n_atoms", &Molecule::size)
      .def_property_readonly("n_electrons", &Molecule::n_electrons)
      .def("with_coordinates", &Molecule::with_coordinates)
      .def("distance", &Molecule::distance)
      .def("angle_deg", &Molecule::angle_deg)
      .def("validate", &Molecule::validate)
      .def("to_xyz", [](const Molecule& mol) { return format_xyz(mol, mol.label()); })
      .def("__repr__", [](const Molecule& mol) { return "<Molecule " + mol.label() + ">"; });

  m.def(
      "qubit_hamiltonian",
      [](const Molecule& mol, const std::string& mapping) {
        HamiltonianBuilder b(parse_mapping(mapping));
        const QubitProblem p = b.build(mol);
        py::list terms;
        for (const auto& t : p.hamiltonian.terms()) terms.append(py::make_tuple(t.string.word(), t.coeff));
        py::dict d;
        d["n_qubits"] = p.hamiltonian.n_qubits();
        d["terms"] = terms;
        d["hf_energy"] = p.mo.hf_energy;
        d["nuclear_repulsion"] = p.mo.nuclear_repulsion;
        d["exact_energy"] = exact_ground_energy(p);
        return d;
      },
      py::arg("molecule"), py::arg("mapping") = "parity2",
      "Mapped STO-3G Hamiltonian as (Pauli word, coefficient) pairs; qubit 0 is the rightmost character.");

  m.def(
      "pes_scan",
      [](const std::vector<double>& bonds, const std::string& mapping, double delta) {
        const auto pts = pes_scan(HamiltonianBuilder(parse_mapping(mapping)), bonds, delta);
        py::list out;
        for (const auto& p : pts) {
          py::dict d;
          d["bond"] = p.bond;
          d["energy"] = p.energy;
          d["force_pes"] = p.force_pes;
          d["force_hf"] = p.force_hf;
          d["pulay_error"] = p.pulay_error;
          out.append(d);
        }
        return py::make_tuple(out, pes_minimum(pts));
      },
      py::arg("bonds"), py::arg("mapping") = "parity2", py::arg("delta") = 1e-3,
      "Exact H2 scan; returns (points, refined minimum bond).");

  py::class_<PyForceField>(m, "ForceField")
      .def(py::init([](const Molecule& mol, const std::string& mapping, const std::string& backend,
                       std::int64_t shots, std::uint64_t seed, bool mitigation, double noise_scale, bool lanczos,
                       double d_energy, double d_forces, const std::string& solver, double delta) {
             return PyForceField(mol, options(mapping, backend, shots, seed, mitigation, noise_scale, lanczos,
                                              d_energy, d_forces, solver, delta));
           }),
           py::arg("molecule"), py::arg("mapping") = "parity2", py::arg("backend") = "exact",
           py::arg("shots") = 8192, py::arg("seed") = 1, py::arg("mitigation") = false, py::arg("noise_scale") = 1.0,
           py::arg("lanczos") = false, py::arg("d_energy") = -0.4, py::arg("d_forces") = -0.1,
           py::arg("solver") = "vqe", py::arg("delta") = 1e-3)
      .def("compute", &PyForceField::compute, py::arg("coordinates"),
           "Energy (Ha), forces (Ha/angstrom) and force covariance at flattened coordinates.")
      .def("reset", &PyForceField::reset)
      .def_property_readonly("circuit_repetitions", &PyForceField::repetitions);

  m.def(
      "run_nve",
      [](PyForceField& ff, int steps, double dt_fs) {
        const MDConfig cfg = md_options(ff, steps, dt_fs, 423.0, 1, 0.0);
        const Eigen::VectorXd r0 = ff.shape().coordinates();
        return trajectory_dict(run_nve(cfg, r0, Eigen::VectorXd::Zero(r0.size()), ff.provider()));
      },
      py::arg("force_field"), py::arg("steps"), py::arg("dt_fs") = 0.2);

  m.def(
      "run_langevin",
      [](PyForceField& ff, int steps, double dt_fs, double temperature_k, std::uint64_t seed) {
        MDConfig cfg = md_options(ff, steps, dt_fs, temperature_k, seed, 0.0);
        cfg.integrator = Integrator::Langevin;
        const Eigen::VectorXd r0 = ff.shape().coordinates();
        return trajectory_dict(run_langevin(cfg, r0, Eigen::VectorXd::Zero(r0.size()), ff.provider()));
      },
      py::arg("force_field"), py::arg("steps"), py::arg("dt_fs") = 0.2, py::arg("temperature_k") = 423.0,
      py::arg("seed") = 1);

  m.def(
      "analyze",
      [](const py::dict& traj, double equilibration_fs, int bins) {
        const TrajectoryReport r = analyze_trajectory(trajectory_from(traj), equilibration_fs, bins, 2);
        py::dict d;
        d["frames_used"] = r.frames_used;
        d["temperature_k"] = r.temperature.mean;
        d["temperature_error_k"] = r.temperature.error;
        d["e_tot_drift"] = r.e_tot_drift;
        d["bond_mean"] = r.bond_mean;
        d["bond_modes"] = r.bond_modes;
        d["e_kin_period_fs"] = r.e_kin_period_fs ? py::cast(*r.e_kin_period_fs) : py::none();
        return d;
      },
      py::arg("trajectory"), py::arg("equilibration_fs") = 0.0, py::arg("bins") = 30);
}
