#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "qmd/backend.hpp"
#include "qmd/pauli.hpp"

namespace qmd {

/// Operators entering L_d(O) = <(H-d) O (H-d)> / <(H-d)^2>.
struct LanczosTerms {
  std::vector<PauliSum> numerators;  // (H-d) O_k (H-d)
  PauliSum denominator;              // (H-d)^2
  PauliSum energy_numerator;         // (H-d) H (H-d), for diagnostics
};

LanczosTerms lanczos_terms(const std::vector<PauliSum>& obs, const PauliSum& h, double d);

struct LanczosDiagnostics {
  double norm = 0.0;             // N = sqrt(<(H-d)^2>)
  double energy = 0.0;           // L_d(H)
  double ratio = 0.0;            // |L_d(H) - d| / N
  bool condition_holds = false;  // ratio > 1 and d > L_d(H)
};

struct LanczosEstimate {
  Eigen::VectorXd values;
  Eigen::MatrixXd covariance;  // delta-method propagation of the ratio
  LanczosDiagnostics diagnostics;
};

/// Ratios from measured expectation values. `est` holds the numerators,
/// then the denominator, then the energy numerator, in that order, with
/// their joint covariance.
LanczosEstimate lanczos_from_estimate(const Estimate& est, std::size_t n_obs, double d);

/// Mitigated expectation values of `obs` on one shared dataset.
/// Throws NumericalError if <(H-d)^2> < 1e-10.
LanczosEstimate lanczos_expectation(const std::vector<PauliSum>& obs, const PauliSum& h, double d,
                                    const std::vector<double>& params, Evaluator& ev, std::uint64_t stream);
LanczosEstimate lanczos_expectation(const PauliSum& o, const PauliSum& h, double d, const std::vector<double>& params,
                                    Evaluator& ev);

}  // namespace qmd
