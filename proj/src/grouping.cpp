#include "qmd/grouping.hpp"

#include <algorithm>

#include "qmd/error.hpp"

namespace qmd {

namespace {

void place(std::vector<MeasurementGroup>& groups, const PauliString& p) {
  if (p.is_identity()) return;
  for (auto& g : groups) {
    if (std::find(g.members.begin(), g.members.end(), p) != g.members.end()) return;
  }
  for (auto& g : groups) {
    if (g.basis.qubitwise_commutes_with(p)) {
      g.members.push_back(p);
      g.basis.x |= p.x;
      g.basis.z |= p.z;
      return;
    }
  }
  groups.push_back({p, {p}});
}

}  // namespace

std::vector<MeasurementGroup> qwc_group(const PauliSum& h) {
  std::vector<MeasurementGroup> groups;
  for (const auto& t : h.terms()) place(groups, t.string);
  return groups;
}

std::vector<MeasurementGroup> qwc_group(const std::vector<PauliSum>& sums) {
  std::vector<MeasurementGroup> groups;
  for (const auto& s : sums) {
    if (!sums.empty() && s.n_qubits() != sums.front().n_qubits())
      throw DomainError("qwc_group: operators act on different qubit counts");
    for (const auto& t : s.terms()) place(groups, t.string);
  }
  return groups;
}

int find_group(const std::vector<MeasurementGroup>& groups, const PauliString& p) {
  for (std::size_t i = 0; i < groups.size(); ++i)
    if (std::find(groups[i].members.begin(), groups[i].members.end(), p) != groups[i].members.end())
      return static_cast<int>(i);
  return -1;
}

}  // namespace qmd
