#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "qmd/backend.hpp"
#include "qmd/lanczos.hpp"
#include "qmd/molecule.hpp"
#include "qmd/pipeline.hpp"
#include "qmd/vqe.hpp"

namespace qmd {

/// dH/dR for every Cartesian direction (index 3*atom + axis), built as
/// (H(R + dR e) - H(R - dR e)) / (2 dR) in Ha/angstrom.
struct ForceOperatorSet {
  std::vector<PauliSum> derivatives;
  double delta = 1e-3;  // angstrom
  MappingKind mapping = MappingKind::Parity2;
  std::optional<TaperingSpec> tapering;
  int n_qubits = 0;
};

/// Orbitals at displaced geometries are matched to `center` (the
/// undisplaced solution), with near-degenerate blocks up to `degeneracy_tol`.
ForceOperatorSet build_force_operators(const Molecule& mol, double delta, HamiltonianBuilder& builder,
                                       const MOIntegrals& center, double degeneracy_tol = 1e-3);

enum class ForceEstimatorKind { HellmannFeynman, CenteredFD, Exact };
std::string to_string(ForceEstimatorKind k);
ForceEstimatorKind parse_force_estimator(const std::string& s);

struct ForceEstimate {
  Eigen::VectorXd forces;      // Ha/angstrom, 3N
  Eigen::MatrixXd covariance;  // (Ha/angstrom)^2
  ForceEstimatorKind estimator = ForceEstimatorKind::HellmannFeynman;
  /// Off-diagonal covariance is stored, but only the diagonal is consumed downstream.
  bool offdiagonal_present = false;
};

/// F = -<D> for all directions from one shared dataset.
ForceEstimate hf_force(const ForceOperatorSet& ops, const std::vector<double>& params, Evaluator& ev);
/// Same from a known state vector.
ForceEstimate hf_force(const ForceOperatorSet& ops, const Eigen::VectorXcd& state);

/// F = -(E+ - E-) / (2 dR) from independent VQE runs at displaced geometries.
ForceEstimate centered_fd_force(const Molecule& mol, double delta, HamiltonianBuilder& builder,
                                const MOIntegrals& center, Evaluator& ev, const std::vector<double>& init,
                                const VQEOptions& opts = {});

struct ExactForceReport {
  ForceEstimate pes;               // centered differences of exact ground energies
  ForceEstimate hellmann_feynman;  // <E0|D|E0>
  double pulay_error = 0.0;        // |F_pes - F_hf| / |F_hf|
  bool degenerate = false;
  double energy = 0.0;
};

ExactForceReport exact_reference_force(const Molecule& mol, double delta, HamiltonianBuilder& builder);

/// Net force and net torque (about the origin) of a 3N force vector.
Eigen::Vector3d net_force(const Eigen::VectorXd& f);
Eigen::Vector3d net_torque(const Molecule& mol, const Eigen::VectorXd& f);

struct LanczosSettings {
  bool enabled = false;
  double d_energy = -0.4;
  double d_forces = -0.1;
};

enum class GroundStateSolver { Vqe, Exact };

struct ForceFieldSettings {
  double delta = 1e-3;
  ForceEstimatorKind estimator = ForceEstimatorKind::HellmannFeynman;
  LanczosSettings lanczos;
  GroundStateSolver solver = GroundStateSolver::Vqe;
  VQEOptions vqe;
  double warm_rho_begin = 0.02;  // trust radius when warm-starting from the previous frame
  double jitter = 0.05;
  std::uint64_t jitter_seed = 7;
  double displacement_degeneracy_tol = 1e-3;
  double frame_degeneracy_tol = 1e-6;
};

struct PointResult {
  double energy = 0.0;
  double energy_variance = 0.0;
  ForceEstimate force;
  VQEResult vqe;
  std::optional<LanczosDiagnostics> energy_diagnostics;
  std::optional<LanczosDiagnostics> force_diagnostics;
  int n_qubits = 0;
};

/// Energy and forces along a sequence of geometries: orbitals follow the
/// previous point, VQE warm-starts from the previous optimum, and the
/// tapering sector stays frozen.
class QuantumForceField {
 public:
  QuantumForceField(HamiltonianBuilder builder, Evaluator evaluator, ForceFieldSettings settings);

  PointResult compute(const Molecule& mol);
  /// Forget the previous point (next call is a cold start).
  void reset();

  HamiltonianBuilder& builder() { return builder_; }
  Evaluator& evaluator() { return evaluator_; }
  const ForceFieldSettings& settings() const { return settings_; }

 private:
  HamiltonianBuilder builder_;
  Evaluator evaluator_;
  ForceFieldSettings settings_;
  std::optional<MOIntegrals> previous_mo_;
  std::optional<std::vector<double>> previous_params_;
};

}  // namespace qmd
