#pragma once

#include <Eigen/Core>
#include <vector>

#include "qmd/grouping.hpp"
#include "qmd/pauli.hpp"
#include "qmd/sampling.hpp"

namespace qmd {

struct Estimate {
  Eigen::VectorXd values;
  Eigen::MatrixXd covariance;  // covariance of the estimators (already divided by shots)
};

/// Sample mean of the +-1 eigenvalue of `p` over a table measured in a
/// basis compatible with p.
double pauli_expectation(const CountsTable& table, const PauliString& p);

/// Values of several operators from one set of group datasets, with the
/// covariance of the estimators. Groups are independent datasets.
Estimate estimate_expectations_with_covariance(const std::vector<PauliSum>& sums,
                                               const std::vector<MeasurementGroup>& groups,
                                               const std::vector<CountsTable>& tables);

/// Entries [start, start+len) with their covariance block.
Estimate slice(const Estimate& e, Eigen::Index start, Eigen::Index len);

}  // namespace qmd
