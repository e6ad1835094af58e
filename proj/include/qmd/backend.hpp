#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qmd/circuit.hpp"
#include "qmd/estimation.hpp"
#include "qmd/noise.hpp"

namespace qmd {

enum class BackendMode { Exact, NoiselessShots, NoisyShots };

BackendMode parse_backend_mode(const std::string& s);
std::string to_string(BackendMode m);

struct QuantumBackend {
  BackendMode mode = BackendMode::Exact;
  std::int64_t shots = 8192;  // per measurement group
  std::optional<NoiseModel> noise;
  bool mitigation = false;
  std::int64_t calibration_shots = 1 << 17;
  std::uint64_t seed = 1;

  /// Throws ConfigError when shots < 1 in shot modes or the noise model
  /// is missing (noisy) / present (other modes).
  void validate() const;
  bool sampled() const { return mode != BackendMode::Exact; }
};

/// RY ansatz shape.
struct Ansatz {
  int n_qubits = 2;
  int depth = 1;
  int parameter_count() const { return ry_ansatz_parameter_count(n_qubits, depth); }
  Circuit circuit(const std::vector<double>& params) const { return build_ry_ansatz(n_qubits, depth, params); }
};

/// Evaluates observables on ansatz states. Every shot-mode evaluation
/// draws from a numbered random stream: stream s, group g is seeded with
/// derive_seed(seed, s, g), so repeating a stream reuses the same random
/// numbers (common random numbers) and fresh streams are independent.
class Evaluator {
 public:
  Evaluator(QuantumBackend backend, Ansatz ansatz);

  const QuantumBackend& backend() const { return backend_; }
  const Ansatz& ansatz() const { return ansatz_; }

  std::uint64_t new_stream() { return next_stream_++; }

  /// Values and estimator covariance of all observables from one dataset.
  Estimate evaluate(const std::vector<PauliSum>& obs, const std::vector<double>& params, std::uint64_t stream);
  Estimate evaluate(const std::vector<PauliSum>& obs, const std::vector<double>& params) {
    return evaluate(obs, params, new_stream());
  }
  double energy(const PauliSum& h, const std::vector<double>& params, std::uint64_t stream);

  /// Total circuit executions spent so far (groups x shots, calibration excluded).
  std::int64_t circuit_repetitions() const { return repetitions_; }
  /// Readout assignment matrix used for mitigation (calibrated on first use).
  const Eigen::MatrixXd& assignment_matrix();

 private:
  QuantumBackend backend_;
  Ansatz ansatz_;
  std::uint64_t next_stream_ = 0;
  std::int64_t repetitions_ = 0;
  std::optional<Eigen::MatrixXd> assignment_;
};

/// One-shot convenience wrapper around Evaluator.
Estimate evaluate_observables(const std::vector<PauliSum>& obs, const std::vector<double>& params,
                              const QuantumBackend& backend, int depth = 1);

}  // namespace qmd
