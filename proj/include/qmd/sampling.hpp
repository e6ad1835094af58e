#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qmd/grouping.hpp"
#include "qmd/noise.hpp"
#include "qmd/simulator.hpp"

namespace qmd {

/// Deterministic child seed of `master` for stream (a, b) via SplitMix64.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

/// Outcome histogram of one measured group. counts[b] is indexed by the
/// bitstring integer (bit q = qubit q); after mitigation the entries are
/// real-valued quasi-counts that still sum to `shots`.
struct CountsTable {
  int n = 0;
  PauliString basis;
  std::int64_t shots = 0;
  std::vector<double> counts;

  /// Bitstring text (qubit 0 rightmost) to integer count.
  std::map<std::string, std::int64_t> as_map() const;
  double total() const;
};

/// Probability of reading b when the device holds a, with independent
/// symmetric flips of probability flip[q] per qubit.
Eigen::VectorXd apply_readout_confusion(const Eigen::VectorXd& probs, const std::vector<double>& flip);

/// Multinomial counts by inverse-CDF over sorted uniforms: the same rng
/// state applied to nearby distributions gives nearby counts.
std::vector<double> sample_multinomial(const Eigen::VectorXd& probs, std::int64_t shots, std::mt19937_64& rng);

/// Samples `shots` outcomes of `probs` (already in the measured basis),
/// with readout flips from `nm` when given.
CountsTable sample_distribution(const Eigen::VectorXd& probs, const PauliString& basis, std::int64_t shots,
                                const NoiseModel* nm, std::uint64_t seed);

/// Rotates into the group's basis (noisily if nm has gate noise),
/// samples, then applies readout flips.
CountsTable sample_counts(const Statevector& psi, const MeasurementGroup& group, std::int64_t shots,
                          const NoiseModel* nm, std::uint64_t seed);
CountsTable sample_counts(const DensityMatrix& rho, const MeasurementGroup& group, std::int64_t shots,
                          const NoiseModel* nm, std::uint64_t seed);

/// Column-stochastic assignment matrix A(i, j) = P(read i | prepared j)
/// estimated by sampling every basis state with readout noise.
Eigen::MatrixXd calibrate_readout_mitigation(const NoiseModel& nm, int n, std::int64_t shots, std::uint64_t seed);

/// Solves A p = measured, clips negatives and renormalizes to the shot
/// count. Throws NumericalError if A is singular.
CountsTable mitigate(const CountsTable& table, const Eigen::MatrixXd& assignment);

}  // namespace qmd
