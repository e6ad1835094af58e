#pragma once

#include <optional>
#include <vector>

#include "qmd/fermion.hpp"
#include "qmd/pauli.hpp"

namespace qmd {

enum class FermionEncoding { JordanWigner, Parity };

/// Qubit form of a+_p (creation) for mode p of n under the given encoding.
ComplexPauliSum creation_operator(int mode, int n_modes, FermionEncoding enc);

PauliSum map_fermionic(const FermionHamiltonian& h, FermionEncoding enc);
PauliSum jordan_wigner(const FermionHamiltonian& h);

/// Parity encoding with the alpha-parity qubit (n/2 - 1) and total-parity
/// qubit (n - 1) replaced by their eigenvalues for the given spin counts.
/// Throws DomainError if the operator acts with X or Y on either qubit.
PauliSum parity_two_qubit_reduction(const FermionHamiltonian& h, int n_alpha, int n_beta);
/// Closed-shell split: n_alpha = ceil(n/2), n_beta = floor(n/2).
PauliSum parity_two_qubit_reduction(const FermionHamiltonian& h, int n_electrons);

/// Fermionic particle-number operator (all modes, or one spin block) as a
/// FermionHamiltonian so it can be sent through any mapping.
enum class NumberKind { Total, Alpha, Beta };
FermionHamiltonian number_operator(std::size_t n_spin_orbitals, NumberKind kind = NumberKind::Total);

/// Copy of `p` with the listed qubits dropped (they must act as I).
PauliString remove_qubits(const PauliString& p, const std::vector<int>& qubits);

/// Z2 symmetries of a Pauli operator and the Clifford data used to remove
/// one qubit per symmetry. Generators are kept fixed for a whole run so that
/// Hamiltonians at different geometries are tapered identically.
struct TaperingSpec {
  std::vector<PauliString> generators;
  std::vector<int> pivot_qubits;
  std::vector<PauliString> single_qubit_paulis;  // sigma_i anticommuting with generator i only
  std::vector<int> sector;                       // eigenvalue +1/-1 per generator
  int n_qubits = 0;

  bool empty() const { return generators.empty(); }
};

/// Independent Z2 symmetries (GF(2) kernel of the symplectic check matrix),
/// in reduced row-echelon form. Empty if none.
TaperingSpec find_z2_symmetries(const PauliSum& h);

/// Applies the Cliffords of `spec` and substitutes its sector eigenvalues.
PauliSum apply_tapering(const PauliSum& h, const TaperingSpec& spec);

struct TaperResult {
  PauliSum hamiltonian;
  TaperingSpec spec;
};

/// Finds symmetries and tapers. Without a sector, picks the one whose
/// tapered ground energy matches `target_energy` (the untapered ground
/// energy when not given).
TaperResult find_z2_and_taper(const PauliSum& h, std::optional<std::vector<int>> sector = std::nullopt,
                              std::optional<double> target_energy = std::nullopt);

}  // namespace qmd
