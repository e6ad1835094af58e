#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qmd/backend.hpp"
#include "qmd/optimizer.hpp"
#include "qmd/pauli.hpp"

namespace qmd {

struct VQEOptions {
  OptimizerOptions optimizer;
  /// Shot modes: re-measure the energy at the optimum on a fresh dataset.
  bool reevaluate = true;
};

struct VQEResult {
  std::vector<double> parameters;
  double energy = 0.0;           // reported energy (re-evaluated in shot modes)
  double optimized_energy = 0.0; // best objective seen during the search
  double energy_variance = 0.0;  // estimator variance of `energy` (0 in exact mode)
  std::vector<std::pair<int, double>> trace;
  int evaluations = 0;
  bool converged = false;
  std::string warning;

  std::string to_json_text() const;
  static VQEResult from_json_text(const std::string& text);
};

/// theta = 0 plus uniform jitter in [-jitter, jitter], seeded.
std::vector<double> initial_parameters(int count, double jitter, std::uint64_t seed);

/// Minimizes <psi(theta)|h|psi(theta)>. In shot modes all objective calls
/// share one random stream, so the objective is a deterministic function
/// of theta during the search.
VQEResult vqe_minimize(const PauliSum& h, Evaluator& evaluator, const std::vector<double>& init,
                       const VQEOptions& opts = {});

}  // namespace qmd
