#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmd/analysis.hpp"
#include "qmd/config.hpp"
#include "qmd/forces.hpp"
#include "qmd/geomopt.hpp"
#include "qmd/md.hpp"

namespace qmd {

/// MD force callback on top of a force field; positions are applied to
/// `shape` (species and charge).
ForceProvider make_force_provider(QuantumForceField& ff, const Molecule& shape);
GeometryForces make_geometry_forces(QuantumForceField& ff);

/// Force field for a molecule: qubit count from the mapped Hamiltonian at
/// `mol`, ansatz and backend from the arguments.
QuantumForceField make_force_field(const HamiltonianBuilder& builder, const Molecule& mol, const QuantumBackend& backend,
                                   int ansatz_depth, const ForceFieldSettings& settings);

struct PesPoint {
  double bond = 0.0;        // angstrom
  double energy = 0.0;      // exact ground energy, Ha
  double force_pes = 0.0;   // -dE/dR on atom 1 along the bond, Ha/angstrom
  double force_hf = 0.0;    // <E0|D|E0>, same component
  double pulay_error = 0.0;
  bool degenerate = false;
};

/// Exact H2 scan along z.
std::vector<PesPoint> pes_scan(HamiltonianBuilder builder, const std::vector<double>& bonds, double delta);

/// Bond of the lowest grid point refined by a parabola through its neighbours.
double pes_minimum(const std::vector<PesPoint>& scan);

struct LanczosScanRow {
  double bond = 0.0;
  double d = 0.0;
  double error = 0.0;      // mean of E - E_exact over repeats
  double sigma = 0.0;      // spread of E over repeats (estimator sigma for one repeat)
  double mean_abs_error = 0.0;
  bool condition_holds = false;  // all repeats
};

/// H2 d-scan: for each bond length and repeat, a VQE on the plain energy,
/// then L_d(H) for every d on one shared dataset. d is measured from the
/// electronic energy. Repeat k uses backend seed derive_seed(seed, bond index, k).
std::vector<LanczosScanRow> scan_lanczos_d(MappingKind mapping, const std::vector<double>& bonds,
                                           const std::vector<double>& d_values, const QuantumBackend& backend,
                                           int repeats, int ansatz_depth = 1, const VQEOptions& vqe = {});

/// Spearman rank correlation.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

struct AblationRun {
  std::string channel;   // none | depolarizing | thermal | readout | all
  bool mitigation = false;
  Trajectory trajectory;
  double epot_offset = 0.0;  // mean over frames of E_pot - exact ground energy at that geometry
  double ekin_decay = 0.0;   // mean E_kin over the first quarter minus the last quarter
  double ekin_mean = 0.0;
};

/// NVE runs from `start` with one noise family active at a time. "none"
/// keeps the noisy backend with every channel off.
AblationRun run_ablation_channel(const std::string& channel, bool mitigation, const Molecule& start,
                                 const HamiltonianBuilder& builder, const QuantumBackend& noisy_backend,
                                 int ansatz_depth, const ForceFieldSettings& settings, const MDConfig& md,
                                 const FrameSink& sink = {});

}  // namespace qmd
