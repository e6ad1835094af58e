#pragma once

#include <vector>

#include "qmd/pauli.hpp"

namespace qmd {

/// Pauli strings measurable together: every member agrees with `basis` on
/// its support, so one rotated-basis dataset yields all of them.
struct MeasurementGroup {
  PauliString basis;  // per qubit X, Y, Z or I (unmeasured)
  std::vector<PauliString> members;
};

/// Greedy first-fit qubit-wise commuting grouping in term order. The
/// identity is skipped; duplicate strings land in the same group once.
std::vector<MeasurementGroup> qwc_group(const PauliSum& h);

/// Grouping of the union of strings of several operators.
std::vector<MeasurementGroup> qwc_group(const std::vector<PauliSum>& sums);

/// Index of the group measuring `p`, or -1.
int find_group(const std::vector<MeasurementGroup>& groups, const PauliString& p);

}  // namespace qmd
