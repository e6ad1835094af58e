#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "qmd/integrals.hpp"

namespace qmd {

struct SCFOptions {
  int max_iterations = 200;
  double energy_tol = 1e-12;
  double density_tol = 1e-10;
};

/// Molecular-orbital integrals in physicists' layout: g(r,s,t,u) is
/// (ru|st) in chemists' notation, so g(r,s,s,r) is the Coulomb integral
/// J_rs and g(r,s,r,s) the exchange integral K_rs.
struct MOIntegrals {
  Eigen::MatrixXd h;
  Tensor4 g;
  double nuclear_repulsion = 0.0;
  Eigen::VectorXd orbital_energies;
  Eigen::MatrixXd coefficients;  // AO x MO
  double hf_energy = 0.0;        // total, including nuclear repulsion
  int iterations = 0;
  std::vector<double> energy_trace;

  std::size_t n_orbitals() const { return static_cast<std::size_t>(h.rows()); }
};

/// Orbitals of a neighbouring geometry that new orbitals are matched to.
struct OrbitalReference {
  Eigen::MatrixXd coefficients;
  Eigen::VectorXd energies;
  /// Reference orbitals closer in energy than this form one block whose
  /// new counterparts are rotated onto them (orthogonal Procrustes).
  double degeneracy_tol = 1e-6;
};

/// Closed-shell Roothaan SCF from a core-Hamiltonian guess. Without a
/// reference the phase convention of fix_phases applies and exactly
/// degenerate orbitals are ordered lexicographically by coefficients;
/// with one, orbitals are matched to it via align_orbitals.
MOIntegrals run_rhf(const AOIntegrals& ints, int n_electrons, const SCFOptions& opts = {},
                    const OrbitalReference* reference = nullptr);

/// Reorders and re-phases the columns of `c` to maximize overlap with
/// `reference` (both AO x MO, overlap metric `s`). Within reference blocks
/// of near-degenerate orbitals the columns are rotated onto the reference.
/// Returns the permutation applied (new column j = old column perm[j]).
std::vector<int> align_orbitals(Eigen::MatrixXd& c, Eigen::VectorXd& energies, const OrbitalReference& reference,
                                const Eigen::MatrixXd& s);

/// Largest-magnitude coefficient of every column made positive.
void fix_phases(Eigen::MatrixXd& c);

/// Four-index transform of AO integrals with MO coefficients `c`.
MOIntegrals transform_integrals(const AOIntegrals& ints, const Eigen::MatrixXd& c);

}  // namespace qmd
