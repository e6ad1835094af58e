#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "oracles.hpp"
#include "qmd/basis.hpp"
#include "qmd/error.hpp"
#include "qmd/exact.hpp"
#include "qmd/fermion.hpp"
#include "qmd/integrals.hpp"
#include "qmd/mapping.hpp"
#include "qmd/molecule.hpp"
#include "qmd/rhf.hpp"
#include "qmd/units.hpp"

using namespace qmd;

namespace {

AOIntegrals ao_of(const Molecule& m) { return compute_ao_integrals(m, build_basis(m, sto3g_hydrogen())); }

MOIntegrals mo_of(const Molecule& m) { return run_rhf(ao_of(m), m.n_electrons()); }

}  // namespace

TEST(Boys, ZeroIsOne) { EXPECT_DOUBLE_EQ(boys_f0(0.0), 1.0); }

TEST(Boys, MatchesQuadrature) {
  EXPECT_NEAR(boys_f0(1.0), 0.7468241328, 1e-10);
  EXPECT_NEAR(boys_f0(100.0), 0.0886226925, 1e-10);
  for (double x : {1e-12, 1e-6, 1e-3, 0.05, 0.3, 2.0, 7.5, 20.0, 35.0}) {
    const double ref = oracle::boys_f0(x);
    EXPECT_NEAR(boys_f0(x), ref, 1e-12 * ref) << x;
  }
}

TEST(Boys, ContinuousAcrossBranches) {
  double prev = boys_f0(0.0);
  for (double x = 1e-4; x < 2.0; x += 1e-4) {
    const double v = boys_f0(x);
    EXPECT_LT(v, prev + 1e-15);
    EXPECT_NEAR(v, prev, 1e-4);
    prev = v;
  }
}

TEST(Boys, NegativeArgumentThrows) { EXPECT_THROW(boys_f0(-1e-3), DomainError); }

TEST(Integrals, NuclearRepulsionH2) {
  EXPECT_NEAR(ao_of(make_h2(0.735)).nuclear_repulsion, 1.0 / (0.735 / 0.52917721067), 1e-12);
}

TEST(Integrals, SingleAtomOverlapIsOne) {
  const Molecule h({{1, {0.0, 0.0, 0.0}}}, -1, "H-");
  const AOIntegrals ao = ao_of(h);
  ASSERT_EQ(ao.overlap.rows(), 1);
  EXPECT_NEAR(ao.overlap(0, 0), 1.0, 1e-8);
}

TEST(Integrals, OverlapMatchesNumericQuadrature) {
  const Molecule m = make_h2(0.735);
  const ElementBasis b = sto3g_hydrogen();
  const Eigen::Vector3d A = m.atoms()[0].position * units::kBohrPerAngstrom;
  const Eigen::Vector3d B = m.atoms()[1].position * units::kBohrPerAngstrom;
  const double ref = oracle::contracted_overlap(b.exponents, b.coefficients, A, b.exponents, b.coefficients, B);
  const double s01 = ao_of(m).overlap(0, 1);
  EXPECT_NEAR(s01, ref, 1e-8);
  EXPECT_NEAR(s01, 0.66, 0.02);
}

TEST(Integrals, CoincidentNucleiThrow) {
  Molecule m = make_h2(0.735);
  Eigen::VectorXd x = m.coordinates();
  x.tail<3>() = x.head<3>();
  std::vector<Atom> atoms{{1, x.head<3>()}, {1, x.tail<3>()}};
  EXPECT_THROW(compute_ao_integrals(Molecule(atoms, 0, "bad"), build_basis(make_h2(0.7), sto3g_hydrogen())),
               DomainError);
}

TEST(Integrals, EriEightfoldSymmetry) {
  for (const Molecule& m : {make_h2(0.735), make_h3plus(0.985, 0.985, 60.0), make_h3plus(1.1, 0.9, 70.0)}) {
    const AOIntegrals ao = ao_of(m);
    const std::size_t n = ao.overlap.rows();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            const double v = ao.eri(i, j, k, l);
            for (double w : {ao.eri(j, i, k, l), ao.eri(i, j, l, k), ao.eri(j, i, l, k), ao.eri(k, l, i, j),
                             ao.eri(l, k, i, j), ao.eri(k, l, j, i), ao.eri(l, k, j, i)})
              EXPECT_NEAR(v, w, 1e-12);
          }
    EXPECT_TRUE(ao.hcore.isApprox(ao.hcore.transpose(), 1e-14));
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ao.overlap).eigenvalues().minCoeff(), 0.0);
  }
}

TEST(Integrals, RigidTranslationInvariance) {
  const Molecule m = make_h3plus(1.0, 0.9, 65.0);
  Eigen::VectorXd shift(9);
  for (int a = 0; a < 3; ++a) shift.segment<3>(3 * a) = Eigen::Vector3d(0.37, -1.2, 2.5);
  const AOIntegrals a = ao_of(m), b = ao_of(m.with_coordinates(m.coordinates() + shift));
  EXPECT_LE((a.overlap - b.overlap).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((a.hcore - b.hcore).cwiseAbs().maxCoeff(), 1e-10);
  for (std::size_t i = 0; i < a.eri.data().size(); ++i) EXPECT_NEAR(a.eri.data()[i], b.eri.data()[i], 1e-10);
  EXPECT_NEAR(a.nuclear_repulsion, b.nuclear_repulsion, 1e-10);
}

TEST(Rhf, H2EnergyMatchesSymmetryOracle) {
  const Molecule m = make_h2(0.735);
  const AOIntegrals ao = ao_of(m);
  const MOIntegrals mo = run_rhf(ao, 2);
  EXPECT_NEAR(mo.hf_energy, oracle::h2_hf_energy(ao), 1e-10);
  // frozen from the oracle above
  EXPECT_NEAR(mo.hf_energy, -1.1169990, 1e-6);
}

TEST(Rhf, OneBasisFunctionTwoElectrons) {
  const Molecule h({{1, {0.0, 0.0, 0.0}}}, -1, "H-");
  const MOIntegrals mo = mo_of(h);
  ASSERT_EQ(mo.coefficients.rows(), 1);
  EXPECT_NEAR(mo.coefficients(0, 0), 1.0, 1e-12);
}

TEST(Rhf, H3PlusEquilateralDegeneracy) {
  const MOIntegrals mo = mo_of(make_h3plus(0.985, 0.985, 60.0));
  const auto& e = mo.orbital_energies;
  EXPECT_GT(e[1] - e[0], 0.1);
  EXPECT_LT(std::abs(e[2] - e[1]), 1e-8);
}

TEST(Rhf, OrthonormalMOsAndSymmetries) {
  for (const Molecule& m : {make_h2(0.735), make_h2(1.4), make_h3plus(0.985, 0.985, 60.0), make_h3plus(1.2, 0.9, 55.0)}) {
    const AOIntegrals ao = ao_of(m);
    const MOIntegrals mo = run_rhf(ao, m.n_electrons());
    const Eigen::MatrixXd ctsc = mo.coefficients.transpose() * ao.overlap * mo.coefficients;
    EXPECT_LE((ctsc - Eigen::MatrixXd::Identity(ctsc.rows(), ctsc.cols())).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_TRUE(mo.h.isApprox(mo.h.transpose(), 1e-12));
    const std::size_t n = mo.n_orbitals();
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t)
          for (std::size_t u = 0; u < n; ++u) {
            EXPECT_NEAR(mo.g(r, s, t, u), mo.g(s, r, u, t), 1e-12);
            EXPECT_NEAR(mo.g(r, s, t, u), mo.g(t, u, r, s), 1e-12);
          }
    // Largest coefficient of each column is positive.
    for (Eigen::Index c = 0; c < mo.coefficients.cols(); ++c) {
      Eigen::Index k;
      mo.coefficients.col(c).cwiseAbs().maxCoeff(&k);
      EXPECT_GT(mo.coefficients(k, c), 0.0);
    }
  }
}

TEST(Rhf, EnergyMonotoneAfterThirdIteration) {
  for (const Molecule& m : {make_h2(0.6), make_h2(0.735), make_h2(1.5), make_h3plus(0.985, 0.985, 60.0),
                            make_h3plus(1.05, 0.95, 64.0)}) {
    const MOIntegrals mo = mo_of(m);
    for (std::size_t i = 3; i + 1 < mo.energy_trace.size(); ++i)
      EXPECT_LE(mo.energy_trace[i + 1], mo.energy_trace[i] + 1e-12);
  }
}

TEST(Rhf, TooManyElectronsThrows) {
  EXPECT_THROW(run_rhf(ao_of(make_h2(0.7)), 6), DomainError);
  EXPECT_THROW(run_rhf(ao_of(make_h2(0.7)), 3), DomainError);
}

TEST(Molecule, InvariantsEnforced) {
  EXPECT_THROW(Molecule({{1, {0, 0, 0}}}, 0, "H").validate(), DomainError);                       // odd electrons
  EXPECT_THROW(Molecule({{2, {0, 0, 0}}, {1, {0, 0, 1}}}, 1, "HeH+").validate(), DomainError);    // not hydrogen
  EXPECT_THROW(Molecule({{1, {0, 0, 0}}, {1, {0, 0, 1e-7}}}, 0, "H2").validate(), DomainError);   // too close
  EXPECT_THROW(Molecule({{1, {0, 0, 0}}, {1, {0, 0, 1}}}, 2, "H2++").validate(), DomainError);     // no electrons
}

TEST(Molecule, XyzRoundTrip) {
  const Molecule m = parse_xyz("3\ncharge=1 H3+\nH 0 0 0\nH 0.985 0 0\nH 0.4925 0.853035 0\n");
  EXPECT_EQ(m.size(), 3u);
  EXPECT_EQ(m.charge(), 1);
  EXPECT_EQ(m.n_electrons(), 2);
  const Molecule back = parse_xyz(format_xyz(m, "charge=1 H3+"));
  EXPECT_TRUE(back.coordinates().isApprox(m.coordinates(), 1e-12));
  EXPECT_THROW(parse_xyz(""), ConfigError);
  EXPECT_THROW(parse_xyz("2\ncharge=0 H2\nH 0 0 0\n"), ConfigError);
}

TEST(Fermion, SpinOrbitalCounts) {
  EXPECT_EQ(build_fermionic_hamiltonian(mo_of(make_h2(0.735)), 4).n_spin_orbitals, 4u);
  EXPECT_EQ(build_fermionic_hamiltonian(mo_of(make_h3plus(0.985, 0.985, 60.0)), 6).n_spin_orbitals, 6u);
  EXPECT_THROW(build_fermionic_hamiltonian(mo_of(make_h2(0.735)), 6), DomainError);
}

TEST(Fermion, NonInteractingLimit) {
  MOIntegrals mo = mo_of(make_h3plus(1.0, 0.95, 62.0));
  mo.g = Tensor4(mo.n_orbitals());
  const FermionHamiltonian f = build_fermionic_hamiltonian(mo, 6);
  Eigen::VectorXd eps = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(mo.h).eigenvalues();
  // Two electrons, opposite spins, both in the lowest level.
  EXPECT_NEAR(oracle::fci_energy(f, 2), 2.0 * eps[0] + mo.nuclear_repulsion, 1e-10);
}

TEST(Fermion, SpinBlocked) {
  const FermionHamiltonian f = build_fermionic_hamiltonian(mo_of(make_h2(0.735)), 4);
  EXPECT_EQ(f.one_body.block(0, 2, 2, 2).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_TRUE(f.one_body.isApprox(f.one_body.transpose()));
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s)
          if ((p < 2) != (s < 2) || (q < 2) != (r < 2)) EXPECT_EQ(f.two_body(p, q, r, s), 0.0);
}

TEST(Hcb, H3PlusHasThreeQubits) {
  EXPECT_EQ(build_hcb_hamiltonian(mo_of(make_h3plus(0.985, 0.985, 60.0)), 2).n_qubits(), 3);
}

TEST(Hcb, OddElectronsRejected) { EXPECT_THROW(build_hcb_hamiltonian(mo_of(make_h2(0.735)), 1), DomainError); }

TEST(Hcb, H2GroundMatchesFullSpace) {
  for (double r : {0.5, 0.735, 1.0, 1.5, 2.0}) {
    const MOIntegrals mo = mo_of(make_h2(r));
    const double hcb = exact_diagonalize_sector(build_hcb_hamiltonian(mo, 2),
                                                jordan_wigner(number_operator(2)), 1.0).energy;
    EXPECT_NEAR(hcb, oracle::fci_energy(build_fermionic_hamiltonian(mo, 4), 2), 1e-8) << r;
  }
}

TEST(Hcb, DiagonalIntegralsGiveOnlyZ) {
  MOIntegrals mo = mo_of(make_h3plus(0.985, 0.985, 60.0));
  const std::size_t n = mo.n_orbitals();
  // Keep only r==s one-body and g_rssr / g_rsrs-type couplings that feed the ZZ part.
  Eigen::MatrixXd h = mo.h.diagonal().asDiagonal();
  Tensor4 g(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      g(r, s, s, r) = mo.g(r, s, s, r);
      g(r, s, r, s) = mo.g(r, s, r, s);
    }
  mo.h = h;
  mo.g = g;
  const PauliSum p = build_hcb_hamiltonian(mo, 2);
  for (const auto& t : p.terms()) EXPECT_EQ(t.string.x, 0u) << t.string.word();
}
