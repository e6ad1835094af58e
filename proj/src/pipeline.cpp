#include "qmd/pipeline.hpp"

#include "qmd/error.hpp"
#include "qmd/exact.hpp"
#include "qmd/fermion.hpp"
#include "qmd/integrals.hpp"

namespace qmd {

MappingKind parse_mapping(const std::string& s) {
  if (s == "jw") return MappingKind::JordanWigner;
  if (s == "parity2") return MappingKind::Parity2;
  if (s == "hcb+taper") return MappingKind::HcbTaper;
  throw ConfigError("unknown mapping '" + s + "' (expected jw, parity2 or hcb+taper)");
}

std::string to_string(MappingKind m) {
  switch (m) {
    case MappingKind::JordanWigner: return "jw";
    case MappingKind::Parity2: return "parity2";
    case MappingKind::HcbTaper: return "hcb+taper";
  }
  return "?";
}

HamiltonianBuilder::HamiltonianBuilder(MappingKind mapping, ElementBasis basis, SCFOptions scf)
    : mapping_(mapping), basis_(std::move(basis)), scf_(scf) {}

QubitProblem HamiltonianBuilder::build(const Molecule& mol, const OrbitalReference* reference) {
  mol.validate();
  const int ne = mol.n_electrons();
  const AOIntegrals ao = compute_ao_integrals(mol, build_basis(mol, basis_));
  QubitProblem p;
  p.mo = run_rhf(ao, ne, scf_, reference);
  p.electrons = ne;
  const std::size_t nso = 2 * p.mo.n_orbitals();

  switch (mapping_) {
    case MappingKind::JordanWigner: {
      p.hamiltonian = jordan_wigner(build_fermionic_hamiltonian(p.mo, nso));
      p.number = jordan_wigner(number_operator(nso));
      break;
    }
    case MappingKind::Parity2: {
      p.hamiltonian = parity_two_qubit_reduction(build_fermionic_hamiltonian(p.mo, nso), ne);
      p.number = parity_two_qubit_reduction(number_operator(nso), ne);
      break;
    }
    case MappingKind::HcbTaper: {
      const PauliSum hcb = build_hcb_hamiltonian(p.mo, ne);
      if (!taper_) {
        // Sector chosen against the ground energy with the right pair count.
        PauliSum pairs(hcb.n_qubits());
        for (int q = 0; q < hcb.n_qubits(); ++q) {
          pairs.add(0.5, PauliString::identity(hcb.n_qubits()));
          pairs.add(-0.5, PauliString{hcb.n_qubits(), 0, 1ULL << q});
        }
        pairs.canonicalize();
        const double target = exact_diagonalize_sector(hcb, pairs, ne / 2).energy;
        taper_ = find_z2_and_taper(hcb, std::nullopt, target).spec;
      }
      if (taper_->n_qubits != hcb.n_qubits())
        throw DomainError("frozen tapering spec does not match the Hamiltonian size");
      p.hamiltonian = apply_tapering(hcb, *taper_);
      break;
    }
  }
  return p;
}

ExactResult exact_ground_state(const QubitProblem& p) {
  if (p.number) return exact_diagonalize_sector(p.hamiltonian, *p.number, p.electrons);
  return exact_diagonalize(p.hamiltonian);
}

double exact_ground_energy(const QubitProblem& p) { return exact_ground_state(p).energy; }

OrbitalReference orbital_reference(const MOIntegrals& mo, double degeneracy_tol) {
  OrbitalReference r;
  r.coefficients = mo.coefficients;
  r.energies = mo.orbital_energies;
  r.degeneracy_tol = degeneracy_tol;
  return r;
}

}  // namespace qmd
