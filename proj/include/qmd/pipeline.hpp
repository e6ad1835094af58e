#pragma once

#include <optional>
#include <string>

#include "qmd/basis.hpp"
#include "qmd/exact.hpp"
#include "qmd/mapping.hpp"
#include "qmd/molecule.hpp"
#include "qmd/pauli.hpp"
#include "qmd/rhf.hpp"

namespace qmd {

enum class MappingKind { JordanWigner, Parity2, HcbTaper };

MappingKind parse_mapping(const std::string& s);
std::string to_string(MappingKind m);

/// Qubit Hamiltonian at one geometry plus what is needed to interpret it.
struct QubitProblem {
  PauliSum hamiltonian;
  MOIntegrals mo;
  /// Diagonal particle-number operator in this encoding with its target
  /// value, when the encoding keeps other particle numbers in the space.
  std::optional<PauliSum> number;
  double electrons = 0.0;
};

/// Molecule -> integrals -> RHF -> qubit Hamiltonian for a fixed mapping.
/// The tapering symmetries and sector found at the first geometry are
/// frozen and reused for every later geometry.
class HamiltonianBuilder {
 public:
  explicit HamiltonianBuilder(MappingKind mapping, ElementBasis basis = sto3g_hydrogen(), SCFOptions scf = {});

  MappingKind mapping() const { return mapping_; }
  const SCFOptions& scf() const { return scf_; }

  /// Builds the qubit Hamiltonian; orbitals are matched to `reference`
  /// when given (see run_rhf).
  QubitProblem build(const Molecule& mol, const OrbitalReference* reference = nullptr);

  const std::optional<TaperingSpec>& tapering() const { return taper_; }
  void freeze_tapering(TaperingSpec spec) { taper_ = std::move(spec); }

 private:
  MappingKind mapping_;
  ElementBasis basis_;
  SCFOptions scf_;
  std::optional<TaperingSpec> taper_;
};

/// Lowest eigenvalue of the problem within its physical particle-number
/// sector (dense diagonalization).
double exact_ground_energy(const QubitProblem& p);
/// Ground eigenpair in the physical sector.
ExactResult exact_ground_state(const QubitProblem& p);

/// Reference for matching orbitals of a nearby geometry.
OrbitalReference orbital_reference(const MOIntegrals& mo, double degeneracy_tol);

}  // namespace qmd
