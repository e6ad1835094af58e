#include "qmd/forces.hpp"

#include <Eigen/Geometry>
#include <cmath>

#include "qmd/error.hpp"
#include "qmd/exact.hpp"
#include "qmd/fermion.hpp"

namespace qmd {

namespace {

void check_delta(double delta) {
  if (!(delta >= 1e-5 && delta <= 1e-1)) throw ConfigError("force displacement must lie in [1e-5, 1e-1] angstrom");
}

}  // namespace

std::string to_string(ForceEstimatorKind k) {
  switch (k) {
    case ForceEstimatorKind::HellmannFeynman: return "HF-FD";
    case ForceEstimatorKind::CenteredFD: return "centered-FD";
    case ForceEstimatorKind::Exact: return "exact";
  }
  return "?";
}

ForceEstimatorKind parse_force_estimator(const std::string& s) {
  if (s == "HF-FD" || s == "hf-fd" || s == "hellmann-feynman") return ForceEstimatorKind::HellmannFeynman;
  if (s == "centered-FD" || s == "centered-fd") return ForceEstimatorKind::CenteredFD;
  if (s == "exact") return ForceEstimatorKind::Exact;
  throw ConfigError("unknown force estimator '" + s + "' (expected HF-FD, centered-FD or exact)");
}

ForceOperatorSet build_force_operators(const Molecule& mol, double delta, HamiltonianBuilder& builder,
                                       const MOIntegrals& center, double degeneracy_tol) {
  check_delta(delta);
  const OrbitalReference ref = orbital_reference(center, degeneracy_tol);
  ForceOperatorSet set;
  set.delta = delta;
  set.mapping = builder.mapping();
  for (std::size_t a = 0; a < mol.size(); ++a) {
    for (int ax = 0; ax < 3; ++ax) {
      QubitProblem plus, minus;
      try {
        plus = builder.build(mol.displaced(a, ax, delta), &ref);
        minus = builder.build(mol.displaced(a, ax, -delta), &ref);
      } catch (const NumericalError& e) {
        throw NumericalError("displaced SCF failed for atom " + std::to_string(a) + " axis " + std::to_string(ax) +
                             ": " + e.what());
      }
      if (plus.hamiltonian.n_qubits() != minus.hamiltonian.n_qubits())
        throw DomainError("inconsistent force operator: displaced Hamiltonians differ in size");
      if (builder.mapping() == MappingKind::HcbTaper && plus.hamiltonian.n_qubits() <= 6) {
        // The frozen sector must still hold the ground state on both sides.
        for (const auto* p : {&plus, &minus}) {
          const PauliSum hcb = build_hcb_hamiltonian(p->mo, mol.n_electrons());
          PauliSum pairs(hcb.n_qubits());
          for (int q = 0; q < hcb.n_qubits(); ++q) {
            pairs.add(0.5, PauliString::identity(hcb.n_qubits()));
            pairs.add(-0.5, PauliString{hcb.n_qubits(), 0, 1ULL << q});
          }
          const double want = exact_diagonalize_sector(hcb, pairs.canonicalized(), mol.n_electrons() / 2).energy;
          const double got = exact_diagonalize(p->hamiltonian).energy;
          if (std::abs(want - got) > 1e-6)
            throw DomainError("inconsistent force operator: tapering sector no longer holds the ground state near atom " +
                              std::to_string(a) + " axis " + std::to_string(ax));
        }
      }
      set.derivatives.push_back((plus.hamiltonian - minus.hamiltonian) * (1.0 / (2.0 * delta)));
    }
  }
  set.tapering = builder.tapering();
  set.n_qubits = set.derivatives.empty() ? 0 : set.derivatives.front().n_qubits();
  return set;
}

ForceEstimate hf_force(const ForceOperatorSet& ops, const std::vector<double>& params, Evaluator& ev) {
  const Estimate e = ev.evaluate(ops.derivatives, params);
  ForceEstimate f;
  f.forces = -e.values;
  f.covariance = e.covariance;
  f.offdiagonal_present = true;
  return f;
}

ForceEstimate hf_force(const ForceOperatorSet& ops, const Eigen::VectorXcd& state) {
  ForceEstimate f;
  const Eigen::Index n = static_cast<Eigen::Index>(ops.derivatives.size());
  f.forces.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) f.forces[i] = -expectation(ops.derivatives[static_cast<std::size_t>(i)], state);
  f.covariance = Eigen::MatrixXd::Zero(n, n);
  return f;
}

ForceEstimate centered_fd_force(const Molecule& mol, double delta, HamiltonianBuilder& builder,
                                const MOIntegrals& center, Evaluator& ev, const std::vector<double>& init,
                                const VQEOptions& opts) {
  check_delta(delta);
  const OrbitalReference ref = orbital_reference(center, 1e-3);
  const Eigen::Index n = static_cast<Eigen::Index>(3 * mol.size());
  ForceEstimate f;
  f.estimator = ForceEstimatorKind::CenteredFD;
  f.forces.resize(n);
  f.covariance = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t a = 0; a < mol.size(); ++a)
    for (int ax = 0; ax < 3; ++ax) {
      const Eigen::Index i = static_cast<Eigen::Index>(3 * a) + ax;
      const VQEResult p = vqe_minimize(builder.build(mol.displaced(a, ax, delta), &ref).hamiltonian, ev, init, opts);
      const VQEResult m = vqe_minimize(builder.build(mol.displaced(a, ax, -delta), &ref).hamiltonian, ev, init, opts);
      f.forces[i] = -(p.energy - m.energy) / (2.0 * delta);
      f.covariance(i, i) = (p.energy_variance + m.energy_variance) / (4.0 * delta * delta);
    }
  return f;
}

ExactForceReport exact_reference_force(const Molecule& mol, double delta, HamiltonianBuilder& builder) {
  check_delta(delta);
  const QubitProblem center = builder.build(mol);
  if (center.hamiltonian.n_qubits() > 6) throw ResourceError("exact reference force limited to 6 qubits");
  const ExactResult gs = exact_ground_state(center);
  const ForceOperatorSet ops = build_force_operators(mol, delta, builder, center.mo);
  const OrbitalReference ref = orbital_reference(center.mo, 1e-3);

  ExactForceReport r;
  r.energy = gs.energy;
  r.degenerate = gs.degeneracy > 1;
  r.hellmann_feynman = hf_force(ops, gs.state);
  r.hellmann_feynman.estimator = ForceEstimatorKind::HellmannFeynman;
  const Eigen::Index n = static_cast<Eigen::Index>(3 * mol.size());
  r.pes.estimator = ForceEstimatorKind::Exact;
  r.pes.forces.resize(n);
  r.pes.covariance = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t a = 0; a < mol.size(); ++a)
    for (int ax = 0; ax < 3; ++ax) {
      const double ep = exact_ground_energy(builder.build(mol.displaced(a, ax, delta), &ref));
      const double em = exact_ground_energy(builder.build(mol.displaced(a, ax, -delta), &ref));
      r.pes.forces[static_cast<Eigen::Index>(3 * a) + ax] = -(ep - em) / (2.0 * delta);
    }
  const double denom = r.hellmann_feynman.forces.norm();
  r.pulay_error = denom > 0.0 ? (r.pes.forces - r.hellmann_feynman.forces).norm() / denom : 0.0;
  return r;
}

Eigen::Vector3d net_force(const Eigen::VectorXd& f) {
  Eigen::Vector3d s = Eigen::Vector3d::Zero();
  for (Eigen::Index i = 0; i + 2 < f.size(); i += 3) s += f.segment<3>(i);
  return s;
}

Eigen::Vector3d net_torque(const Molecule& mol, const Eigen::VectorXd& f) {
  Eigen::Vector3d t = Eigen::Vector3d::Zero();
  for (std::size_t a = 0; a < mol.size(); ++a)
    t += mol.atoms()[a].position.cross(Eigen::Vector3d(f.segment<3>(static_cast<Eigen::Index>(3 * a))));
  return t;
}

QuantumForceField::QuantumForceField(HamiltonianBuilder builder, Evaluator evaluator, ForceFieldSettings settings)
    : builder_(std::move(builder)), evaluator_(std::move(evaluator)), settings_(std::move(settings)) {
  check_delta(settings_.delta);
  if (settings_.solver == GroundStateSolver::Exact && evaluator_.backend().mode != BackendMode::Exact)
    throw ConfigError("the exact ground-state solver requires the exact-matrix backend");
  if (settings_.estimator == ForceEstimatorKind::Exact && evaluator_.backend().mode != BackendMode::Exact)
    throw ConfigError("the exact force estimator requires the exact-matrix backend");
}

void QuantumForceField::reset() {
  previous_mo_.reset();
  previous_params_.reset();
}

PointResult QuantumForceField::compute(const Molecule& mol) {
  std::optional<OrbitalReference> ref;
  if (previous_mo_) ref = orbital_reference(*previous_mo_, settings_.frame_degeneracy_tol);
  const QubitProblem prob = builder_.build(mol, ref ? &*ref : nullptr);
  const PauliSum& h = prob.hamiltonian;

  PointResult out;
  out.n_qubits = h.n_qubits();
  const int nq = h.n_qubits();

  if (settings_.estimator == ForceEstimatorKind::Exact) {
    ExactForceReport rep = exact_reference_force(mol, settings_.delta, builder_);
    out.energy = rep.energy;
    out.force = rep.pes;
    previous_mo_ = prob.mo;
    return out;
  }

  if (nq != evaluator_.ansatz().n_qubits)
    throw DomainError("Hamiltonian has " + std::to_string(nq) + " qubits, ansatz has " +
                      std::to_string(evaluator_.ansatz().n_qubits));

  const ForceOperatorSet ops =
      build_force_operators(mol, settings_.delta, builder_, prob.mo, settings_.displacement_degeneracy_tol);

  if (settings_.estimator == ForceEstimatorKind::CenteredFD && settings_.solver == GroundStateSolver::Vqe) {
    const std::vector<double> init =
        previous_params_ ? *previous_params_
                         : initial_parameters(evaluator_.ansatz().parameter_count(), settings_.jitter,
                                              settings_.jitter_seed);
    VQEOptions vo = settings_.vqe;
    out.vqe = vqe_minimize(h, evaluator_, init, vo);
    out.energy = out.vqe.energy;
    out.energy_variance = out.vqe.energy_variance;
    out.force = centered_fd_force(mol, settings_.delta, builder_, prob.mo, evaluator_, out.vqe.parameters, vo);
    previous_params_ = out.vqe.parameters;
    previous_mo_ = prob.mo;
    return out;
  }

  if (settings_.solver == GroundStateSolver::Exact) {
    const ExactResult gs = exact_ground_state(prob);
    out.energy = gs.energy;
    out.force = hf_force(ops, gs.state);
    previous_mo_ = prob.mo;
    return out;
  }

  // VQE, warm-started from the previous point when there is one.
  VQEOptions vo = settings_.vqe;
  vo.reevaluate = false;
  std::vector<double> init;
  if (previous_params_) {
    init = *previous_params_;
    vo.optimizer.rho_begin = std::max(settings_.warm_rho_begin, vo.optimizer.rho_end);
  } else {
    init = initial_parameters(evaluator_.ansatz().parameter_count(), settings_.jitter, settings_.jitter_seed);
  }
  out.vqe = vqe_minimize(h, evaluator_, init, vo);
  const std::vector<double>& theta = out.vqe.parameters;

  const Eigen::Index n = static_cast<Eigen::Index>(ops.derivatives.size());
  const std::uint64_t stream = evaluator_.new_stream();
  if (!settings_.lanczos.enabled) {
    std::vector<PauliSum> obs{h};
    obs.insert(obs.end(), ops.derivatives.begin(), ops.derivatives.end());
    const Estimate e = evaluator_.evaluate(obs, theta, stream);
    out.energy = e.values[0];
    out.energy_variance = e.covariance(0, 0);
    out.force.forces = -e.values.tail(n);
    out.force.covariance = e.covariance.bottomRightCorner(n, n);
  } else {
    // The shift d is measured from the electronic energy.
    const PauliSum h_el = h - PauliSum::constant(nq, prob.mo.nuclear_repulsion);
    const LanczosTerms te = lanczos_terms({h}, h_el, settings_.lanczos.d_energy);
    const LanczosTerms tf = lanczos_terms(ops.derivatives, h_el, settings_.lanczos.d_forces);
    std::vector<PauliSum> obs = te.numerators;
    obs.push_back(te.denominator);
    obs.push_back(te.energy_numerator);
    obs.insert(obs.end(), tf.numerators.begin(), tf.numerators.end());
    obs.push_back(tf.denominator);
    obs.push_back(tf.energy_numerator);
    const Estimate e = evaluator_.evaluate(obs, theta, stream);
    const LanczosEstimate le = lanczos_from_estimate(slice(e, 0, 3), 1, settings_.lanczos.d_energy);
    const LanczosEstimate lf = lanczos_from_estimate(slice(e, 3, n + 2), static_cast<std::size_t>(n),
                                                     settings_.lanczos.d_forces);
    out.energy = le.values[0];
    out.energy_variance = le.covariance(0, 0);
    out.force.forces = -lf.values;
    out.force.covariance = lf.covariance;
    out.energy_diagnostics = le.diagnostics;
    out.force_diagnostics = lf.diagnostics;
  }
  out.force.estimator = ForceEstimatorKind::HellmannFeynman;
  out.force.offdiagonal_present = evaluator_.backend().sampled();
  out.vqe.energy = out.energy;
  out.vqe.energy_variance = out.energy_variance;
  previous_params_ = theta;
  previous_mo_ = prob.mo;
  return out;
}

}  // namespace qmd
