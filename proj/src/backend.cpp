#include "qmd/backend.hpp"

#include "qmd/error.hpp"
#include "qmd/exact.hpp"
#include "qmd/simulator.hpp"

namespace qmd {

BackendMode parse_backend_mode(const std::string& s) {
  if (s == "exact" || s == "exact-matrix") return BackendMode::Exact;
  if (s == "noiseless" || s == "noiseless-shots") return BackendMode::NoiselessShots;
  if (s == "noisy" || s == "noisy-shots") return BackendMode::NoisyShots;
  throw ConfigError("unknown backend mode '" + s + "' (expected exact-matrix, noiseless-shots or noisy-shots)");
}

std::string to_string(BackendMode m) {
  switch (m) {
    case BackendMode::Exact: return "exact-matrix";
    case BackendMode::NoiselessShots: return "noiseless-shots";
    case BackendMode::NoisyShots: return "noisy-shots";
  }
  return "?";
}

void QuantumBackend::validate() const {
  if (sampled() && shots < 1) throw ConfigError("backend: shots must be >= 1 in shot modes");
  if (mode == BackendMode::NoisyShots && !noise) throw ConfigError("backend: noisy-shots mode needs a noise model");
  if (mode != BackendMode::NoisyShots && noise)
    throw ConfigError("backend: a noise model is only allowed in noisy-shots mode");
  if (mitigation && mode != BackendMode::NoisyShots)
    throw ConfigError("backend: readout mitigation requires noisy-shots mode");
  if (mitigation && calibration_shots < 1) throw ConfigError("backend: calibration shots must be >= 1");
  if (noise) noise->validate();
}

Evaluator::Evaluator(QuantumBackend backend, Ansatz ansatz) : backend_(std::move(backend)), ansatz_(ansatz) {
  backend_.validate();
  if (backend_.noise) backend_.noise->validate_for(ansatz_.n_qubits);
}

const Eigen::MatrixXd& Evaluator::assignment_matrix() {
  if (!assignment_) {
    if (!backend_.noise) throw ConfigError("readout mitigation requires a noise model");
    assignment_ = calibrate_readout_mitigation(*backend_.noise, ansatz_.n_qubits, backend_.calibration_shots,
                                               derive_seed(backend_.seed, ~0ULL, 0));
  }
  return *assignment_;
}

Estimate Evaluator::evaluate(const std::vector<PauliSum>& obs, const std::vector<double>& params,
                             std::uint64_t stream) {
  for (const auto& o : obs)
    if (o.n_qubits() != ansatz_.n_qubits)
      throw DomainError("observable acts on " + std::to_string(o.n_qubits()) + " qubits, ansatz has " +
                        std::to_string(ansatz_.n_qubits));
  const Circuit circ = ansatz_.circuit(params);

  if (backend_.mode == BackendMode::Exact) {
    const Statevector psi = evolve_statevector(circ);
    Estimate e;
    e.values.resize(static_cast<Eigen::Index>(obs.size()));
    for (std::size_t i = 0; i < obs.size(); ++i) e.values[static_cast<Eigen::Index>(i)] = expectation(obs[i], psi);
    e.covariance = Eigen::MatrixXd::Zero(e.values.size(), e.values.size());
    return e;
  }

  const auto groups = qwc_group(obs);
  std::vector<CountsTable> tables;
  tables.reserve(groups.size());
  const NoiseModel* nm = backend_.mode == BackendMode::NoisyShots ? &*backend_.noise : nullptr;
  // A model with every channel off is sampled exactly like the noiseless backend.
  const bool noisy = nm && !nm->noiseless();
  if (!noisy) {
    const Statevector psi = evolve_statevector(circ);
    for (std::size_t g = 0; g < groups.size(); ++g)
      tables.push_back(sample_counts(psi, groups[g], backend_.shots, nullptr, derive_seed(backend_.seed, stream, g)));
  } else {
    const DensityMatrix rho = evolve_density_with_noise(circ, *nm);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      CountsTable t = sample_counts(rho, groups[g], backend_.shots, nm, derive_seed(backend_.seed, stream, g));
      if (backend_.mitigation && nm->readout) t = mitigate(t, assignment_matrix());
      tables.push_back(std::move(t));
    }
  }
  repetitions_ += static_cast<std::int64_t>(groups.size()) * backend_.shots;
  return estimate_expectations_with_covariance(obs, groups, tables);
}

double Evaluator::energy(const PauliSum& h, const std::vector<double>& params, std::uint64_t stream) {
  return evaluate({h}, params, stream).values[0];
}

Estimate evaluate_observables(const std::vector<PauliSum>& obs, const std::vector<double>& params,
                              const QuantumBackend& backend, int depth) {
  if (obs.empty()) throw DomainError("evaluate_observables: no observables");
  Evaluator ev(backend, Ansatz{obs.front().n_qubits(), depth});
  return ev.evaluate(obs, params);
}

}  // namespace qmd
