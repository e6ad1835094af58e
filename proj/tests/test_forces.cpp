#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "qmd/error.hpp"
#include "qmd/exact.hpp"
#include "qmd/forces.hpp"
#include "qmd/lanczos.hpp"
#include "qmd/simulator.hpp"
#include "qmd/studies.hpp"

using namespace qmd;

namespace {

struct Fixture {
  HamiltonianBuilder builder{MappingKind::Parity2};
  Molecule mol;
  QubitProblem prob;
  ForceOperatorSet ops;
  explicit Fixture(Molecule m, MappingKind k = MappingKind::Parity2) : builder(k), mol(std::move(m)) {
    prob = builder.build(mol);
    ops = build_force_operators(mol, 1e-3, builder, prob.mo);
  }
};

QuantumBackend shots(std::int64_t n, std::uint64_t seed) {
  QuantumBackend b;
  b.mode = BackendMode::NoiselessShots;
  b.shots = n;
  b.seed = seed;
  return b;
}

QuantumBackend noisy(std::uint64_t seed) {
  QuantumBackend b;
  b.mode = BackendMode::NoisyShots;
  b.noise = default_device_model();
  b.seed = seed;
  return b;
}

double pulay_at(double r) {
  HamiltonianBuilder b(MappingKind::Parity2);
  return exact_reference_force(make_h2(r), 1e-3, b).pulay_error;
}

double pes_force_z1(double r, double delta) {
  HamiltonianBuilder b(MappingKind::Parity2);
  return exact_reference_force(make_h2(r), delta, b).pes.forces(5);
}

PauliSum electronic(const QubitProblem& p) {
  return p.hamiltonian - PauliSum::constant(p.hamiltonian.n_qubits(), p.mo.nuclear_repulsion);
}

std::vector<double> vqe_params(const QubitProblem& p) {
  Evaluator ev(QuantumBackend{}, Ansatz{p.hamiltonian.n_qubits(), 1});
  return vqe_minimize(p.hamiltonian, ev, initial_parameters(ev.ansatz().parameter_count(), 0.05, 7)).parameters;
}

}  // namespace

TEST(ForceOperators, ShapeAndConsistency) {
  Fixture s(make_h3plus(0.985, 0.985, 60.0), MappingKind::HcbTaper);
  ASSERT_EQ(s.ops.derivatives.size(), 9u);
  for (const PauliSum& d : s.ops.derivatives) EXPECT_EQ(d.n_qubits(), s.ops.n_qubits);
  EXPECT_TRUE(s.ops.tapering.has_value());
  EXPECT_DOUBLE_EQ(s.ops.delta, 1e-3);
}

TEST(ForceOperators, DisplacementRangeChecked) {
  Fixture s(make_h2(0.735));
  EXPECT_THROW(build_force_operators(s.mol, 1e-6, s.builder, s.prob.mo), ConfigError);
  EXPECT_THROW(build_force_operators(s.mol, 0.5, s.builder, s.prob.mo), ConfigError);
}

TEST(ForceOperators, EquilibriumForceVanishes) {
  HamiltonianBuilder b(MappingKind::Parity2);
  std::vector<double> grid;
  for (double r = 0.70; r <= 0.7701; r += 0.005) grid.push_back(r);
  const double r_eq = pes_minimum(pes_scan(b, grid, 1e-3));
  Fixture s(make_h2(r_eq));
  const ForceEstimate f = hf_force(s.ops, exact_ground_state(s.prob).state);
  EXPECT_LT(f.forces.cwiseAbs().maxCoeff(), 1e-4);
}

TEST(ForceOperators, CompressedBondIsRepulsive) {
  Fixture s(make_h2(0.6));
  const ForceEstimate f = hf_force(s.ops, exact_ground_state(s.prob).state);
  EXPECT_GT(f.forces(5), 0.0);  // atom 1 sits at +z
  EXPECT_LT(f.forces(2), 0.0);
}

TEST(ForceOperators, NetForceAndTorqueVanish) {
  for (const Molecule& m : {make_h2(0.735), make_h2(0.6), make_h3plus(0.985, 0.985, 60.0),
                            make_h3plus(1.05, 0.95, 64.0)}) {
    Fixture s(m, m.size() == 3 ? MappingKind::HcbTaper : MappingKind::Parity2);
    const ForceEstimate f = hf_force(s.ops, exact_ground_state(s.prob).state);
    EXPECT_LT(net_force(f.forces).norm(), 1e-6);
    EXPECT_LT(net_torque(m, f.forces).norm(), 1e-6);
  }
}

TEST(HfForce, TwoCodePathsAgree) {
  for (double r : {0.6, 0.735, 1.2}) {
    Fixture s(make_h2(r));
    const auto p = vqe_params(s.prob);
    Evaluator ev(QuantumBackend{}, Ansatz{2, 1});
    const ForceEstimate a = hf_force(s.ops, p, ev);
    const ForceEstimate b = hf_force(s.ops, evolve_statevector(build_ry_ansatz(2, 1, p)));
    EXPECT_LT((a.forces - b.forces).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_EQ(a.covariance.norm(), 0.0);

    HamiltonianBuilder b2(MappingKind::Parity2);
    const ExactForceReport rep = exact_reference_force(s.mol, 1e-3, b2);
    const ForceEstimate c = hf_force(s.ops, exact_ground_state(s.prob).state);
    EXPECT_LT((c.forces - rep.hellmann_feynman.forces).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(HfForce, ExactVqeMatchesReferenceOverGrid) {
  for (double r = 0.5; r <= 1.5001; r += 0.1) {
    Fixture s(make_h2(r));
    Evaluator ev(QuantumBackend{}, Ansatz{2, 1});
    const ForceEstimate f = hf_force(s.ops, vqe_params(s.prob), ev);
    HamiltonianBuilder b(MappingKind::Parity2);
    const double ref = exact_reference_force(s.mol, 1e-3, b).pes.forces(5);
    EXPECT_LE(std::abs(f.forces(5) - ref) / std::abs(ref), 0.005) << "R = " << r;
  }
}

TEST(HfForce, StandardErrorMatchesScatter) {
  Fixture s(make_h2(0.735));
  const auto p = vqe_params(s.prob);
  Evaluator ev(shots(8192, 4), Ansatz{2, 1});
  std::vector<double> fz;
  double predicted = 0.0;
  for (int k = 0; k < 200; ++k) {
    const ForceEstimate f = hf_force(s.ops, p, ev);
    fz.push_back(f.forces(5));
    predicted += std::sqrt(f.covariance(5, 5)) / 200;
  }
  double mean = 0, var = 0;
  for (double x : fz) mean += x / fz.size();
  for (double x : fz) var += (x - mean) * (x - mean) / (fz.size() - 1);
  const double ratio = std::sqrt(var) / predicted;
  EXPECT_GT(ratio, 1 / 1.3);
  EXPECT_LT(ratio, 1.3);
}

TEST(HfForce, CovarianceSymmetricPsd) {
  Fixture s(make_h3plus(1.05, 0.95, 64.0), MappingKind::HcbTaper);
  Evaluator ev(noisy(2), Ansatz{s.ops.n_qubits, 1});
  const ForceEstimate f = hf_force(s.ops, {0.2, -0.3, 0.5, 0.1}, ev);
  EXPECT_LT((f.covariance - f.covariance.transpose()).norm(), 1e-15);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(f.covariance);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-14);
  EXPECT_TRUE(f.offdiagonal_present);
}

TEST(HfForce, ZeroOperatorGivesZero) {
  ForceOperatorSet ops;
  ops.n_qubits = 2;
  ops.derivatives = {PauliSum(2), PauliSum(2)};
  Evaluator ev(shots(1000, 1), Ansatz{2, 1});
  const ForceEstimate f = hf_force(ops, {0.3, 0.2, 0.1, 0.0}, ev);
  EXPECT_EQ(f.forces.norm(), 0.0);
  EXPECT_EQ(f.covariance.norm(), 0.0);
}

TEST(CenteredFd, ExactModeMatchesReference) {
  Fixture s(make_h2(0.9));
  Evaluator ev(QuantumBackend{}, Ansatz{2, 1});
  const ForceEstimate f = centered_fd_force(s.mol, 1e-3, s.builder, s.prob.mo, ev, vqe_params(s.prob));
  EXPECT_EQ(f.estimator, ForceEstimatorKind::CenteredFD);
  HamiltonianBuilder b(MappingKind::Parity2);
  const ForceEstimate ref = exact_reference_force(s.mol, 1e-3, b).pes;
  EXPECT_LT((f.forces - ref.forces).cwiseAbs().maxCoeff(), 1e-4);
}

TEST(CenteredFd, ShotNoiseBlowsUp) {
  Fixture s(make_h2(0.735));
  const auto p = vqe_params(s.prob);
  Evaluator ev(shots(8192, 6), Ansatz{2, 1});
  const ForceEstimate fd = centered_fd_force(s.mol, 1e-3, s.builder, s.prob.mo, ev, p);
  const ForceEstimate hf = hf_force(s.ops, p, ev);
  EXPECT_GE(std::sqrt(fd.covariance(5, 5)), 100 * std::sqrt(hf.covariance(5, 5)));
}

TEST(CenteredFd, DiscretizationErrorQuartersWhenStepHalves) {
  const double truth = (4 * pes_force_z1(0.9, 0.005) - pes_force_z1(0.9, 0.01)) / 3;
  const double e1 = std::abs(pes_force_z1(0.9, 0.04) - truth);
  const double e2 = std::abs(pes_force_z1(0.9, 0.02) - truth);
  EXPECT_NEAR(e1 / e2, 4.0, 0.3);
}

TEST(Pulay, NearEquilibriumBound) {
  for (double r : {0.70, 0.735, 0.77}) EXPECT_LE(pulay_at(r), 0.004);
}

TEST(PesMinimum, MorseOnCoarseGrid) {
  // Morse well, minimum at 0.74; grid spacing 0.05 as in the default scan
  const double de = 0.17, a = 1.9, re = 0.74;
  std::vector<PesPoint> pts;
  for (double r = 0.3; r < 2.0; r += 0.05) {
    const double x = std::exp(-a * (r - re));
    PesPoint p;
    p.bond = r;
    p.energy = de * (1 - x) * (1 - x);
    p.force_pes = -2 * de * a * x * (1 - x);
    pts.push_back(p);
  }
  EXPECT_NEAR(pes_minimum(pts), re, 2e-4);
  for (auto& p : pts) p.force_pes = 0.0;  // no slopes: three-point parabola, still near
  EXPECT_NEAR(pes_minimum(pts), re, 0.01);
}

TEST(Pulay, StretchedBondWithinBound) {
  // Hellmann-Feynman is exact for eigenstates of the fixed-size qubit
  // Hamiltonian; what remains is finite-difference noise at every bond length
  for (double r : {1.0, 1.25, 1.5}) EXPECT_LE(pulay_at(r), 0.004);
  EXPECT_LT(pulay_at(1.5), 1e-5);
}

TEST(Pulay, BothEstimatorsSmallAtEquilibrium) {
  HamiltonianBuilder b(MappingKind::Parity2);
  std::vector<double> grid;
  for (double r = 0.725; r <= 0.7451; r += 0.0025) grid.push_back(r);
  const double r_eq = pes_minimum(pes_scan(b, grid, 1e-3));
  const ExactForceReport rep = exact_reference_force(make_h2(r_eq), 1e-3, b);
  EXPECT_LT(rep.pes.forces.norm(), 1e-4);
  EXPECT_LT(rep.hellmann_feynman.forces.norm(), 1e-4);
}

TEST(Lanczos, EigenstateIsFixedPoint) {
  Fixture s(make_h2(0.8));
  const ExactResult gs = exact_ground_state(s.prob);
  const PauliSum h_el = electronic(s.prob);
  std::vector<PauliSum> obs = s.ops.derivatives;
  obs.push_back(s.prob.hamiltonian);
  for (double d : {-2.0, -0.4, 0.5}) {
    const LanczosTerms t = lanczos_terms(obs, h_el, d);
    Estimate e;
    e.values.resize(static_cast<Eigen::Index>(obs.size() + 2));
    for (std::size_t k = 0; k < obs.size(); ++k) e.values(k) = expectation(t.numerators[k], gs.state);
    e.values(obs.size()) = expectation(t.denominator, gs.state);
    e.values(obs.size() + 1) = expectation(t.energy_numerator, gs.state);
    e.covariance = Eigen::MatrixXd::Zero(e.values.size(), e.values.size());
    const LanczosEstimate le = lanczos_from_estimate(e, obs.size(), d);
    for (std::size_t k = 0; k < obs.size(); ++k)
      EXPECT_NEAR(le.values(k), expectation(obs[k], gs.state), 1e-10) << "d = " << d;
  }
}

TEST(Lanczos, ShiftLinearity) {
  Fixture s(make_h2(0.735));
  const PauliSum h_el = electronic(s.prob);
  const std::vector<double> p{0.4, -0.2, 0.7, 0.1};
  Evaluator ev(QuantumBackend{}, Ansatz{2, 1});
  const PauliSum o = s.ops.derivatives[5];
  const double c = 0.37;
  const double a = lanczos_expectation(o, h_el, -0.4, p, ev).values(0);
  const double b = lanczos_expectation(o + PauliSum::constant(2, c), h_el, -0.4, p, ev).values(0);
  EXPECT_NEAR(b, a + c, 1e-10);
}

TEST(Lanczos, SingularDenominatorThrows) {
  PauliSum h(2);
  h.add(0.3, "ZI");
  h.add(0.2, "IZ");
  Evaluator ev(QuantumBackend{}, Ansatz{2, 1});
  // |00> has eigenvalue 0.5
  EXPECT_THROW(lanczos_expectation(h, h, 0.5, {0, 0, 0, 0}, ev), NumericalError);
}

TEST(Lanczos, ProductsCanonical) {
  Fixture s(make_h2(0.735));
  const LanczosTerms t = lanczos_terms({s.prob.hamiltonian}, electronic(s.prob), -0.4);
  const PauliSum canon = t.denominator.canonicalized();
  EXPECT_EQ(canon.size(), t.denominator.size());
}

TEST(Lanczos, NoisyEnergyImproves) {
  Fixture s(make_h2(0.735));
  const double e0 = exact_ground_energy(s.prob);
  const PauliSum h_el = electronic(s.prob);
  double plain = 0, mitigated = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Evaluator ev(noisy(seed), Ansatz{2, 1});
    const VQEResult r = vqe_minimize(s.prob.hamiltonian, ev, initial_parameters(4, 0.05, 7));
    plain += std::abs(r.energy - e0) / 20;
    mitigated += std::abs(lanczos_expectation(s.prob.hamiltonian, h_el, -0.4, r.parameters, ev).values(0) - e0) / 20;
  }
  EXPECT_LT(mitigated, plain);
}

TEST(DScan, ExactBackendHasNoError) {
  const auto rows = scan_lanczos_d(MappingKind::Parity2, {0.7}, {-2.0, -0.4, 0.0}, QuantumBackend{}, 1);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) EXPECT_LT(std::abs(r.error), 1e-5);
}

TEST(DScan, NoiselessShotsUnbiased) {
  const auto rows = scan_lanczos_d(MappingKind::Parity2, {0.7}, {-0.4}, shots(8192, 2), 10);
  EXPECT_LE(std::abs(rows[0].error), 3 * rows[0].sigma);
}

TEST(DScan, FarShiftInflatesSpread) {
  const auto rows = scan_lanczos_d(MappingKind::Parity2, {0.6, 0.7, 0.9}, {-10.0, -0.4}, noisy(3), 5);
  ASSERT_EQ(rows.size(), 6u);
  for (std::size_t b = 0; b < 3; ++b) {
    const auto& far = rows[2 * b];
    const auto& near = rows[2 * b + 1];
    ASSERT_DOUBLE_EQ(far.d, -10.0);
    EXPECT_GT(far.sigma, near.sigma) << "R = " << far.bond;
  }
}

TEST(Spearman, Basics) {
  EXPECT_NEAR(spearman({1, 2, 3, 4}, {10, 20, 35, 50}), 1.0, 1e-12);
  EXPECT_NEAR(spearman({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0, 1e-12);
  EXPECT_THROW(spearman({1}, {1}), DomainError);
}
