#include "qmd/estimation.hpp"

#include <algorithm>
#include <bit>

#include "qmd/error.hpp"

namespace qmd {

namespace {

double sign(std::uint64_t outcome, std::uint64_t support) {
  return (std::popcount(outcome & support) & 1) ? -1.0 : 1.0;
}

}  // namespace

double pauli_expectation(const CountsTable& table, const PauliString& p) {
  if (!table.basis.qubitwise_commutes_with(p) || (p.support() & ~table.basis.support()))
    throw DomainError("pauli_expectation: " + p.word() + " not measured in basis " + table.basis.word());
  double acc = 0.0, tot = 0.0;
  for (std::size_t b = 0; b < table.counts.size(); ++b) {
    acc += table.counts[b] * sign(b, p.support());
    tot += table.counts[b];
  }
  return acc / tot;
}

Estimate estimate_expectations_with_covariance(const std::vector<PauliSum>& sums,
                                               const std::vector<MeasurementGroup>& groups,
                                               const std::vector<CountsTable>& tables) {
  if (groups.size() != tables.size()) throw DomainError("estimation: one counts table per group required");
  const Eigen::Index m = static_cast<Eigen::Index>(sums.size());
  Estimate est;
  est.values = Eigen::VectorXd::Zero(m);
  est.covariance = Eigen::MatrixXd::Zero(m, m);

  // Coefficient of every group member in every sum.
  std::vector<Eigen::MatrixXd> coef(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g)
    coef[g] = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(groups[g].members.size()), m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (const auto& t : sums[static_cast<std::size_t>(i)].terms()) {
      if (t.string.is_identity()) {
        est.values[i] += t.coeff;
        continue;
      }
      const int g = find_group(groups, t.string);
      if (g < 0) throw DomainError("estimation: missing group data for " + t.string.word());
      const auto& mem = groups[static_cast<std::size_t>(g)].members;
      const auto k = std::find(mem.begin(), mem.end(), t.string) - mem.begin();
      coef[static_cast<std::size_t>(g)](static_cast<Eigen::Index>(k), i) += t.coeff;
    }
  }

  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (coef[g].isZero(0.0)) continue;
    const auto& table = tables[g];
    const auto& mem = groups[g].members;
    const Eigen::Index k = static_cast<Eigen::Index>(mem.size());
    if (table.counts.empty() || table.shots < 1) throw DomainError("estimation: empty counts table");
    for (const auto& p : mem)
      if (!table.basis.qubitwise_commutes_with(p) || (p.support() & ~table.basis.support()))
        throw DomainError("estimation: counts table basis does not match group");
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(k);
    Eigen::MatrixXd second = Eigen::MatrixXd::Zero(k, k);
    double tot = 0.0;
    Eigen::VectorXd s(k);
    for (std::size_t b = 0; b < table.counts.size(); ++b) {
      const double w = table.counts[b];
      if (w == 0.0) continue;
      for (Eigen::Index a = 0; a < k; ++a) s[a] = sign(b, mem[static_cast<std::size_t>(a)].support());
      mean += w * s;
      second.noalias() += w * s * s.transpose();
      tot += w;
    }
    mean /= tot;
    second /= tot;
    const Eigen::MatrixXd cov = (second - mean * mean.transpose()) / static_cast<double>(table.shots);
    est.values += coef[g].transpose() * mean;
    est.covariance += coef[g].transpose() * cov * coef[g];
  }
  est.covariance = 0.5 * (est.covariance + est.covariance.transpose());
  for (Eigen::Index i = 0; i < m; ++i)
    if (est.covariance(i, i) < 0.0 && est.covariance(i, i) > -1e-14) est.covariance(i, i) = 0.0;
  return est;
}

Estimate slice(const Estimate& e, Eigen::Index start, Eigen::Index len) {
  return {e.values.segment(start, len), e.covariance.block(start, start, len, len)};
}

}  // namespace qmd
