#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qmd/basis.hpp"
#include "qmd/error.hpp"
#include "qmd/exact.hpp"
#include "qmd/fermion.hpp"
#include "qmd/grouping.hpp"
#include "qmd/mapping.hpp"
#include "qmd/molecule.hpp"
#include "qmd/pauli.hpp"
#include "qmd/pipeline.hpp"
#include "qmd/rhf.hpp"

using namespace qmd;

namespace {

MOIntegrals mo_of(const Molecule& m) {
  return run_rhf(compute_ao_integrals(m, build_basis(m, sto3g_hydrogen())), m.n_electrons());
}

const char* kLetters = "IXYZ";

std::string word_of(int code, int n) {
  std::string w;
  for (int q = n - 1; q >= 0; --q) w += kLetters[(code >> (2 * q)) & 3];
  return w;
}

}  // namespace

TEST(PauliMultiply, SingleQubitAlgebra) {
  const auto xy = pauli_multiply(PauliString::from_word("X"), PauliString::from_word("Y"));
  EXPECT_EQ(xy.result.word(), "Z");
  EXPECT_EQ(xy.phase(), std::complex<double>(0, 1));
  for (const char* w : {"I", "X", "Y", "Z", "XZ", "YY"}) {
    const auto pp = pauli_multiply(PauliString::from_word(w), PauliString::from_word(w));
    EXPECT_TRUE(pp.result.is_identity());
    EXPECT_EQ(pp.phase(), std::complex<double>(1, 0));
  }
  const auto two = pauli_multiply(PauliString::from_word("XZ"), PauliString::from_word("YZ"));
  EXPECT_EQ(two.result.word(), "ZI");
  EXPECT_EQ(two.phase(), std::complex<double>(0, 1));
}

TEST(PauliMultiply, AllTwoQubitPairsMatchKronecker) {
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      const std::string wa = word_of(a, 2), wb = word_of(b, 2);
      const auto p = pauli_multiply(PauliString::from_word(wa), PauliString::from_word(wb));
      const Eigen::MatrixXcd ref = oracle::word_matrix(wa) * oracle::word_matrix(wb);
      const Eigen::MatrixXcd got = p.phase() * oracle::word_matrix(p.result.word());
      EXPECT_LE((ref - got).cwiseAbs().maxCoeff(), 1e-14) << wa << "*" << wb;
    }
}

TEST(PauliMultiply, AssociativeAndIdentityNeutral) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> pick(0, 255);
  for (int k = 0; k < 200; ++k) {
    const auto a = PauliString::from_word(word_of(pick(rng), 4));
    const auto b = PauliString::from_word(word_of(pick(rng), 4));
    const auto c = PauliString::from_word(word_of(pick(rng), 4));
    const auto ab = pauli_multiply(a, b), bc = pauli_multiply(b, c);
    const auto l = pauli_multiply(ab.result, c), r = pauli_multiply(a, bc.result);
    EXPECT_EQ(l.result, r.result);
    EXPECT_EQ((ab.i_power + l.i_power) % 4, (bc.i_power + r.i_power) % 4);
    const auto ia = pauli_multiply(PauliString::identity(4), a);
    EXPECT_EQ(ia.result, a);
    EXPECT_EQ(ia.i_power, 0);
  }
}

TEST(PauliMultiply, SizeMismatchThrows) {
  EXPECT_THROW(pauli_multiply(PauliString::from_word("X"), PauliString::from_word("XX")), DomainError);
}

TEST(PauliSum, DenseMatrixMatchesKronecker) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(0, 63);
  std::normal_distribution<double> c(0.0, 1.0);
  PauliSum s(3);
  for (int k = 0; k < 12; ++k) s.add(c(rng), word_of(pick(rng), 3));
  s.canonicalize();
  Eigen::MatrixXcd ref = Eigen::MatrixXcd::Zero(8, 8);
  for (const auto& t : s.terms()) ref += t.coeff * oracle::word_matrix(t.string.word());
  EXPECT_LE((dense_matrix(s) - ref).cwiseAbs().maxCoeff(), 1e-13);
  for (const auto& t : s.terms())
    EXPECT_LE((kron_matrix(t.string) - oracle::word_matrix(t.string.word())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PauliSum, CanonicalTextRoundTripIsBitExact) {
  const PauliSum h = HamiltonianBuilder(MappingKind::Parity2).build(make_h2(0.735)).hamiltonian;
  const PauliSum back = PauliSum::from_text(h.to_text());
  ASSERT_EQ(back.size(), h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    EXPECT_EQ(back.terms()[i].string, h.terms()[i].string);
    EXPECT_EQ(back.terms()[i].coeff, h.terms()[i].coeff);
  }
  EXPECT_EQ(back.to_text(), h.to_text());
}

TEST(PauliSum, CanonicalizeMergesAndPrunes) {
  PauliSum s(2);
  s.add(0.5, "XZ");
  s.add(0.25, "XZ");
  s.add(1e-13, "YY");
  s.add(-0.75, "XZ");
  s.add(2.0, "II");
  s.canonicalize();
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.identity_coeff(), 2.0);
}

TEST(JordanWigner, SingleModeNumberOperator) {
  FermionHamiltonian f;
  f.n_spin_orbitals = 1;
  f.one_body = Eigen::MatrixXd::Constant(1, 1, 0.7);
  f.two_body = Tensor4(1);
  const PauliSum p = jordan_wigner(f);
  EXPECT_NEAR(p.coeff_of(PauliString::from_word("I")), 0.35, 1e-15);
  EXPECT_NEAR(p.coeff_of(PauliString::from_word("Z")), -0.35, 1e-15);
  EXPECT_EQ(p.size(), 2u);
}

TEST(JordanWigner, ZeroTensorsGiveConstant) {
  FermionHamiltonian f;
  f.n_spin_orbitals = 4;
  f.one_body = Eigen::MatrixXd::Zero(4, 4);
  f.two_body = Tensor4(4);
  f.constant = 0.72;
  const PauliSum p = jordan_wigner(f);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_NEAR(p.identity_coeff(), 0.72, 1e-15);
}

TEST(JordanWigner, SpectrumMatchesFockSpace) {
  for (const Molecule& m : {make_h2(0.735), make_h2(1.3)}) {
    const FermionHamiltonian f = build_fermionic_hamiltonian(mo_of(m), 4);
    const Eigen::MatrixXd fock = oracle::fock_matrix(f);
    const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(fock).eigenvalues();
    const Eigen::VectorXd got =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(dense_matrix(jordan_wigner(f))).eigenvalues();
    EXPECT_LE((ref - got).cwiseAbs().maxCoeff(), 1e-10);
    for (const auto& t : jordan_wigner(f).terms()) EXPECT_TRUE(std::isfinite(t.coeff));
  }
}

TEST(JordanWigner, H2GroundMatchesFci) {
  const FermionHamiltonian f = build_fermionic_hamiltonian(mo_of(make_h2(0.735)), 4);
  EXPECT_NEAR(exact_diagonalize(jordan_wigner(f)).energy, oracle::fci_energy(f, -1), 1e-10);
}

TEST(ParityReduction, H2HasTwoQubitsAndSameGround) {
  const FermionHamiltonian f = build_fermionic_hamiltonian(mo_of(make_h2(0.735)), 4);
  const PauliSum p = parity_two_qubit_reduction(f, 2);
  EXPECT_EQ(p.n_qubits(), 2);
  const double e_fci = oracle::fci_energy(f, 2);
  EXPECT_NEAR(exact_diagonalize(p).energy, e_fci, 1e-10);
  EXPECT_NEAR(exact_diagonalize(p).energy, -1.1373, 5e-5);
  const double e_jw = exact_diagonalize_sector(jordan_wigner(f), jordan_wigner(number_operator(4)), 2.0).energy;
  EXPECT_NEAR(exact_diagonalize(p).energy, e_jw, 1e-10);
}

TEST(ParityReduction, IdentityOnlyStaysIdentity) {
  FermionHamiltonian f;
  f.n_spin_orbitals = 4;
  f.one_body = Eigen::MatrixXd::Zero(4, 4);
  f.two_body = Tensor4(4);
  f.constant = -0.3;
  const PauliSum p = parity_two_qubit_reduction(f, 2);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_TRUE(p.terms()[0].string.is_identity());
  EXPECT_NEAR(p.identity_coeff(), -0.3, 1e-15);
}

TEST(ParityReduction, SpinFlipIsRejected) {
  FermionHamiltonian f = build_fermionic_hamiltonian(mo_of(make_h2(0.735)), 4);
  f.one_body(0, 2) = f.one_body(2, 0) = 0.1;
  EXPECT_THROW(parity_two_qubit_reduction(f, 2), DomainError);
}

TEST(Tapering, H3PlusHcbToTwoQubits) {
  const MOIntegrals mo = mo_of(make_h3plus(0.985, 0.985, 60.0));
  const PauliSum hcb = build_hcb_hamiltonian(mo, 2);
  const double target = exact_diagonalize_sector(hcb, jordan_wigner(number_operator(3)), 1.0).energy;
  const TaperResult t = find_z2_and_taper(hcb, std::nullopt, target);
  EXPECT_EQ(t.hamiltonian.n_qubits(), 2);
  EXPECT_FALSE(t.spec.empty());
  EXPECT_NEAR(exact_diagonalize(t.hamiltonian).energy, target, 1e-10);
  // Every generator commutes with every term.
  for (const auto& g : t.spec.generators)
    for (const auto& term : hcb.terms()) EXPECT_TRUE(g.commutes_with(term.string));
}

TEST(Tapering, H2ReducedOperatorKeepsGround) {
  const FermionHamiltonian f = build_fermionic_hamiltonian(mo_of(make_h2(0.735)), 4);
  const PauliSum p = parity_two_qubit_reduction(f, 2);
  const double e0 = exact_diagonalize(p).energy;
  const TaperResult t = find_z2_and_taper(p, std::nullopt, e0);
  EXPECT_NEAR(exact_diagonalize(t.hamiltonian).energy, e0, 1e-10);
  // Explicit sector reproduces the chosen one.
  const TaperResult again = find_z2_and_taper(p, t.spec.sector);
  EXPECT_EQ(again.hamiltonian.to_text(), t.hamiltonian.to_text());
}

TEST(Tapering, NoSymmetryLeavesOperatorUnchanged) {
  PauliSum h(2);
  h.add(0.3, "XI");
  h.add(-0.2, "ZI");
  h.add(0.5, "IY");
  h.add(0.1, "IZ");
  h.add(0.7, "IX");
  h.add(0.4, "XY");
  h.add(0.25, "ZZ");
  h.canonicalize();
  EXPECT_TRUE(find_z2_symmetries(h).empty());
  const TaperResult t = find_z2_and_taper(h);
  EXPECT_TRUE(t.spec.empty());
  EXPECT_EQ(t.hamiltonian.to_text(), h.to_text());
}

TEST(Grouping, Examples) {
  PauliSum z(2);
  z.add(1.0, "ZI");
  z.add(1.0, "IZ");
  z.add(1.0, "ZZ");
  EXPECT_EQ(qwc_group(z).size(), 1u);
  PauliSum xz(2);
  xz.add(1.0, "XX");
  xz.add(1.0, "ZZ");
  EXPECT_EQ(qwc_group(xz).size(), 2u);
  const PauliSum h2 = HamiltonianBuilder(MappingKind::Parity2).build(make_h2(0.735)).hamiltonian;
  EXPECT_EQ(h2.size(), 5u);
  EXPECT_EQ(qwc_group(h2).size(), 2u);
}

TEST(Grouping, EveryStringOnceAndMembersCommute) {
  const PauliSum h = HamiltonianBuilder(MappingKind::JordanWigner).build(make_h3plus(1.0, 0.9, 64.0)).hamiltonian;
  const auto groups = qwc_group(h);
  std::size_t total = 0;
  for (const auto& g : groups) {
    total += g.members.size();
    for (const auto& a : g.members) {
      EXPECT_FALSE(a.is_identity());
      for (const auto& b : g.members) EXPECT_TRUE(a.qubitwise_commutes_with(b));
      EXPECT_TRUE(a.qubitwise_commutes_with(g.basis));
    }
  }
  EXPECT_EQ(total, h.without_identity().size());
  for (const auto& t : h.without_identity().terms()) EXPECT_GE(find_group(groups, t.string), 0);
}

TEST(Exact, SingleZ) {
  PauliSum z(1);
  z.add(1.0, "Z");
  const ExactResult r = exact_diagonalize(z);
  EXPECT_NEAR(r.energy, -1.0, 1e-15);
  EXPECT_NEAR(std::abs(r.state[1]), 1.0, 1e-12);
}

TEST(Exact, ConstantOperator) {
  const ExactResult r = exact_diagonalize(PauliSum::constant(2, 0.42));
  EXPECT_NEAR(r.energy, 0.42, 1e-15);
  EXPECT_NEAR(r.state.norm(), 1.0, 1e-12);
}

TEST(Exact, DegenerateGroundIsDeterministic) {
  PauliSum h(2);
  h.add(1.0, "ZI");  // ground space spanned by |10>, |11>
  const ExactResult a = exact_diagonalize(h), b = exact_diagonalize(h);
  EXPECT_EQ(a.degeneracy, 2);
  EXPECT_LE((a.state - b.state).norm(), 1e-15);
  // First nonzero amplitude is real and positive.
  for (Eigen::Index i = 0; i < a.state.size(); ++i)
    if (std::abs(a.state[i]) > 1e-12) {
      EXPECT_NEAR(a.state[i].imag(), 0.0, 1e-14);
      EXPECT_GT(a.state[i].real(), 0.0);
      break;
    }
}

TEST(Exact, TooManyQubitsThrows) {
  EXPECT_THROW(exact_diagonalize(PauliSum::constant(13, 1.0)), ResourceError);
}

TEST(Mappings, GroundEnergiesAgreeAcrossPaths) {
  for (const Molecule& m : {make_h2(0.735), make_h2(1.2), make_h3plus(0.985, 0.985, 60.0)}) {
    const FermionHamiltonian f = build_fermionic_hamiltonian(mo_of(m), 2 * mo_of(m).n_orbitals());
    const double ref = oracle::fci_energy(f, m.n_electrons());
    for (MappingKind k : {MappingKind::JordanWigner, MappingKind::Parity2, MappingKind::HcbTaper}) {
      HamiltonianBuilder b(k);
      EXPECT_NEAR(exact_ground_energy(b.build(m)), ref, 1e-8) << m.label() << " " << to_string(k);
    }
  }
}

TEST(Mappings, PairedSpaceIsUpperBoundOffSymmetry) {
  // away from D3h, open-shell singlets mix into the ground state and the
  // paired (seniority-zero) space only bounds it from above
  const Molecule m = make_h3plus(1.05, 0.95, 64.0);
  const FermionHamiltonian f = build_fermionic_hamiltonian(mo_of(m), 2 * mo_of(m).n_orbitals());
  const double ref = oracle::fci_energy(f, m.n_electrons());
  for (MappingKind k : {MappingKind::JordanWigner, MappingKind::Parity2}) {
    HamiltonianBuilder b(k);
    EXPECT_NEAR(exact_ground_energy(b.build(m)), ref, 1e-8);
  }
  HamiltonianBuilder hcb(MappingKind::HcbTaper);
  const double e = exact_ground_energy(hcb.build(m));
  EXPECT_GE(e, ref - 1e-10);
  EXPECT_LT(e - ref, 1e-3);
}
