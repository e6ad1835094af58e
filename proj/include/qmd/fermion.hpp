#pragma once

#include <Eigen/Core>

#include "qmd/integrals.hpp"
#include "qmd/pauli.hpp"
#include "qmd/rhf.hpp"

namespace qmd {

/// H = sum_pq h_pq a+_p a_q + 1/2 sum_pqrs g_pqrs a+_p a+_q a_r a_s + E_NN over
/// spin orbitals ordered all-alpha then all-beta. g uses the MO layout of
/// MOIntegrals: g_pqrs = (ps|qr).
struct FermionHamiltonian {
  std::size_t n_spin_orbitals = 0;
  Eigen::MatrixXd one_body;
  Tensor4 two_body;
  double constant = 0.0;
};

FermionHamiltonian build_fermionic_hamiltonian(const MOIntegrals& mo, std::size_t n_spin_orbitals);

/// Paired-electron (hard-core boson) qubit Hamiltonian, one qubit per
/// spatial orbital; qubit r is |1> when orbital r is doubly occupied.
PauliSum build_hcb_hamiltonian(const MOIntegrals& mo, int n_electrons);

}  // namespace qmd
