#include <gtest/gtest.h>

#include <cmath>

#include "qmd/backend.hpp"
#include "qmd/error.hpp"
#include "qmd/exact.hpp"
#include "qmd/forces.hpp"
#include "qmd/grouping.hpp"
#include "qmd/optimizer.hpp"
#include "qmd/pipeline.hpp"
#include "qmd/studies.hpp"
#include "qmd/units.hpp"
#include "qmd/vqe.hpp"

using namespace qmd;

namespace {

QubitProblem h2_problem(double r = 0.735) {
  HamiltonianBuilder b(MappingKind::Parity2);
  return b.build(make_h2(r));
}

QuantumBackend shots_backend(std::int64_t shots, std::uint64_t seed) {
  QuantumBackend b;
  b.mode = BackendMode::NoiselessShots;
  b.shots = shots;
  b.seed = seed;
  return b;
}

}  // namespace

TEST(Optimizer, QuadraticBowl) {
  const Objective f = [](const std::vector<double>& x) {
    return (x[0] - 1) * (x[0] - 1) + 3 * (x[1] + 0.5) * (x[1] + 0.5) + 0.5 * x[0] * x[1];
  };
  for (auto m : {OptimizerMethod::Cobyla, OptimizerMethod::NelderMead}) {
    OptimizerOptions o;
    o.method = m;
    const OptimizerResult r = minimize(f, {0.0, 0.0}, o);
    // stationary point: x = 54/47, y = -1/2 - x/12
    EXPECT_NEAR(r.x[0], 54.0 / 47.0, 2e-3);
    EXPECT_NEAR(r.x[1], -0.5 - 54.0 / 47.0 / 12.0, 2e-3);
    EXPECT_LE(r.evaluations, 500);
  }
}

TEST(Optimizer, ReturnsBestSeen) {
  const Objective f = [](const std::vector<double>& x) { return std::cos(3 * x[0]) + 0.1 * x[0] * x[0]; };
  const OptimizerResult r = minimize(f, {0.3}, {});
  double best = 1e300;
  for (double v : r.trace) best = std::min(best, v);
  EXPECT_DOUBLE_EQ(r.fx, best);
  EXPECT_DOUBLE_EQ(f(r.x), r.fx);
}

TEST(Optimizer, EvaluationBudgetRespected) {
  OptimizerOptions o;
  o.max_evaluations = 30;
  o.rho_end = 1e-12;
  const Objective f = [](const std::vector<double>& x) { return std::sin(x[0]) + std::sin(x[1]) + std::sin(x[2]); };
  const OptimizerResult r = minimize(f, {0.1, 0.2, 0.3}, o);
  EXPECT_LE(r.evaluations, 30);
  EXPECT_EQ(r.trace.size(), static_cast<std::size_t>(r.evaluations));
}

TEST(Optimizer, UnknownMethodRejected) {
  EXPECT_EQ(parse_optimizer_method("cobyla"), OptimizerMethod::Cobyla);
  EXPECT_THROW(parse_optimizer_method("bfgs"), ConfigError);
}

TEST(Backend, ValidateModes) {
  QuantumBackend b;
  b.mode = BackendMode::NoisyShots;
  EXPECT_THROW(b.validate(), ConfigError);
  b.noise = default_device_model();
  b.shots = 0;
  EXPECT_THROW(b.validate(), ConfigError);
  b.shots = 10;
  EXPECT_NO_THROW(b.validate());
  b.mode = BackendMode::Exact;
  EXPECT_THROW(b.validate(), ConfigError);
}

TEST(Evaluate, IdentityObservableInAllModes) {
  PauliSum id = PauliSum::constant(2, 1.7);
  QuantumBackend exact;
  QuantumBackend noisy;
  noisy.mode = BackendMode::NoisyShots;
  noisy.noise = default_device_model();
  for (const QuantumBackend& b : {exact, shots_backend(100, 1), noisy}) {
    const Estimate e = evaluate_observables({id}, {0.1, 0.2, 0.3, 0.4}, b);
    EXPECT_DOUBLE_EQ(e.values(0), 1.7);
    EXPECT_DOUBLE_EQ(e.covariance(0, 0), 0.0);
  }
}

TEST(Evaluate, AnsatzSizeMismatchThrows) {
  PauliSum h(3);
  h.add(1.0, "ZZZ");
  EXPECT_THROW(evaluate_observables({h}, {0, 0, 0, 0}, QuantumBackend{}), DomainError);
}

TEST(Evaluate, ForceOperatorsShareOneDataset) {
  HamiltonianBuilder b(MappingKind::Parity2);
  const Molecule mol = make_h2(0.735);
  const QubitProblem p = b.build(mol);
  const ForceOperatorSet ops = build_force_operators(mol, 1e-3, b, p.mo);
  const std::int64_t shots = 1000;
  Evaluator ev(shots_backend(shots, 3), Ansatz{2, 1});
  ev.evaluate(ops.derivatives, {0.1, 0.2, 0.3, 0.4});
  const auto groups = qwc_group(ops.derivatives);
  EXPECT_EQ(ev.circuit_repetitions(), static_cast<std::int64_t>(groups.size()) * shots);
  // one direction only: same group count, same repetitions
  Evaluator ev1(shots_backend(shots, 3), Ansatz{2, 1});
  ev1.evaluate({ops.derivatives[5]}, {0.1, 0.2, 0.3, 0.4});
  EXPECT_LE(ev1.circuit_repetitions(), ev.circuit_repetitions());
}

TEST(Vqe, ExactBackendReachesGroundEnergy) {
  const QubitProblem p = h2_problem();
  Evaluator ev(QuantumBackend{}, Ansatz{2, 1});
  const VQEResult r = vqe_minimize(p.hamiltonian, ev, initial_parameters(4, 0.05, 7));
  const double e0 = exact_ground_energy(p);
  EXPECT_NEAR(e0, -1.1373, 1e-4);
  EXPECT_NEAR(r.energy, e0, 1e-6);
  EXPECT_GE(r.energy, e0 - 1e-10);
}

TEST(Vqe, NoiselessShotsWithinThreeMilliHartree) {
  const QubitProblem p = h2_problem();
  const double e0 = exact_ground_energy(p);
  std::vector<double> err;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Evaluator ev(shots_backend(8192, seed), Ansatz{2, 1});
    err.push_back(std::abs(vqe_minimize(p.hamiltonian, ev, initial_parameters(4, 0.05, 7)).energy - e0));
  }
  std::sort(err.begin(), err.end());
  EXPECT_LT(err[2], 3e-3);
}

TEST(Vqe, DeterministicForFixedSeed) {
  const QubitProblem p = h2_problem();
  Evaluator a(shots_backend(2048, 9), Ansatz{2, 1}), b(shots_backend(2048, 9), Ansatz{2, 1});
  const VQEResult ra = vqe_minimize(p.hamiltonian, a, initial_parameters(4, 0.05, 7));
  const VQEResult rb = vqe_minimize(p.hamiltonian, b, initial_parameters(4, 0.05, 7));
  EXPECT_EQ(ra.parameters, rb.parameters);
  EXPECT_EQ(ra.energy, rb.energy);
  EXPECT_EQ(ra.evaluations, rb.evaluations);
}

TEST(Vqe, EnergyPeriodicInParameters) {
  const QubitProblem p = h2_problem();
  Evaluator ev(QuantumBackend{}, Ansatz{2, 1});
  std::vector<double> th{0.3, -1.1, 0.8, 2.0};
  const double e = ev.energy(p.hamiltonian, th, 0);
  for (std::size_t k = 0; k < th.size(); ++k) {
    auto shifted = th;
    shifted[k] += 2 * M_PI;
    EXPECT_NEAR(ev.energy(p.hamiltonian, shifted, 0), e, 1e-12);
  }
}

TEST(Vqe, VariationalBoundAcrossGeometries) {
  for (double r : {0.5, 0.735, 1.2, 2.0}) {
    const QubitProblem p = h2_problem(r);
    Evaluator ev(QuantumBackend{}, Ansatz{2, 1});
    const VQEResult res = vqe_minimize(p.hamiltonian, ev, initial_parameters(4, 0.05, 7));
    EXPECT_GE(res.energy, exact_ground_energy(p) - 1e-10) << "R = " << r;
  }
}

TEST(Vqe, TightAtEquilibriumGeometries) {
  for (const auto& [mol, kind] : {std::pair{make_h2(0.735), MappingKind::Parity2},
                                  std::pair{make_h3plus(0.985, 0.985, 60.0), MappingKind::HcbTaper}}) {
    HamiltonianBuilder b(kind);
    const QubitProblem p = b.build(mol);
    Evaluator ev(QuantumBackend{}, Ansatz{p.hamiltonian.n_qubits(), 1});
    const VQEResult res =
        vqe_minimize(p.hamiltonian, ev, initial_parameters(ev.ansatz().parameter_count(), 0.05, 7));
    const double e0 = exact_ground_energy(p);
    EXPECT_GE(res.energy, e0 - 1e-10);
    EXPECT_LT(res.energy - e0, 1e-6) << mol.label();
  }
}

TEST(Vqe, TraceMinimumIsOptimizedEnergy) {
  const QubitProblem p = h2_problem();
  Evaluator ev(QuantumBackend{}, Ansatz{2, 1});
  const VQEResult r = vqe_minimize(p.hamiltonian, ev, initial_parameters(4, 0.05, 7));
  double best = 1e300;
  for (const auto& [it, e] : r.trace) best = std::min(best, e);
  EXPECT_DOUBLE_EQ(best, r.optimized_energy);
}

TEST(Vqe, WarmStartSavesEvaluations) {
  // second frame of an H2 run from 0.6 angstrom: warm start against a cold start at the same geometry
  const Molecule m0 = make_h2(0.6);
  const QuantumBackend b = shots_backend(8192, 1);
  QuantumForceField warm = make_force_field(HamiltonianBuilder(MappingKind::Parity2), m0, b, 1, {});
  std::vector<Eigen::VectorXd> frames;
  const ForceProvider fp = make_force_provider(warm, m0);
  MDConfig cfg;
  cfg.steps = 1;
  cfg.masses = {units::kProtonMassAu, units::kProtonMassAu};
  run_nve(cfg, m0.coordinates(), Eigen::VectorXd::Zero(6), [&](const Eigen::VectorXd& r) {
    frames.push_back(r);
    return fp(r);
  });
  ASSERT_EQ(frames.size(), 2u);
  const Molecule m1 = m0.with_coordinates(frames[1]);
  QuantumForceField replay = make_force_field(HamiltonianBuilder(MappingKind::Parity2), m0, b, 1, {});
  replay.compute(m0);
  const int warm_evals = replay.compute(m1).vqe.evaluations;
  QuantumForceField cold = make_force_field(HamiltonianBuilder(MappingKind::Parity2), m0, b, 1, {});
  const int cold_evals = cold.compute(m1).vqe.evaluations;
  EXPECT_LE(2 * warm_evals, cold_evals) << warm_evals << " vs " << cold_evals;
}

TEST(Vqe, InitLengthChecked) {
  const QubitProblem p = h2_problem();
  Evaluator ev(QuantumBackend{}, Ansatz{2, 1});
  EXPECT_THROW(vqe_minimize(p.hamiltonian, ev, {0.0, 0.0}), DomainError);
}

TEST(Vqe, ResultJsonRoundTrip) {
  VQEResult r;
  r.parameters = {0.1, -0.2, 0.3, 0.4};
  r.energy = -1.137;
  r.trace = {{1, -1.0}, {2, -1.1}};
  r.evaluations = 2;
  const VQEResult back = VQEResult::from_json_text(r.to_json_text());
  EXPECT_EQ(back.parameters, r.parameters);
  EXPECT_EQ(back.energy, r.energy);
  EXPECT_EQ(back.trace, r.trace);
}
