#include "qmd/lanczos.hpp"

#include <cmath>

#include "qmd/error.hpp"

namespace qmd {

LanczosTerms lanczos_terms(const std::vector<PauliSum>& obs, const PauliSum& h, double d) {
  if (!std::isfinite(d)) throw DomainError("Lanczos shift must be finite");
  const int n = h.n_qubits();
  const PauliSum shifted = h - PauliSum::constant(n, d);
  LanczosTerms t;
  for (const auto& o : obs) {
    if (o.n_qubits() != n) throw DomainError("Lanczos: observable and Hamiltonian sizes differ");
    t.numerators.push_back(sandwich(shifted, o));
  }
  t.denominator = square(shifted);
  t.energy_numerator = sandwich(shifted, h);
  return t;
}

LanczosEstimate lanczos_from_estimate(const Estimate& est, std::size_t n_obs, double d) {
  const Eigen::Index k = static_cast<Eigen::Index>(n_obs);
  if (est.values.size() != k + 2) throw DomainError("Lanczos: estimate has the wrong number of entries");
  const double den = est.values[k];
  if (!(den >= 1e-10))
    throw NumericalError("near-singular Lanczos ratio: <(H-d)^2> = " + std::to_string(den) +
                         " (d too close to an eigenvalue)");
  LanczosEstimate out;
  out.values = est.values.head(k) / den;
  // Jacobian of (A_0/B, ..., A_{k-1}/B, A_E/B) with respect to (A, B, A_E).
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(k + 1, k + 2);
  for (Eigen::Index i = 0; i < k; ++i) {
    jac(i, i) = 1.0 / den;
    jac(i, k) = -est.values[i] / (den * den);
  }
  jac(k, k + 1) = 1.0 / den;
  jac(k, k) = -est.values[k + 1] / (den * den);
  const Eigen::MatrixXd cov = jac * est.covariance * jac.transpose();
  out.covariance = cov.topLeftCorner(k, k);
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();

  auto& dg = out.diagnostics;
  dg.norm = std::sqrt(den);
  dg.energy = est.values[k + 1] / den;
  dg.ratio = std::abs(dg.energy - d) / dg.norm;
  dg.condition_holds = dg.ratio > 1.0 && d > dg.energy;
  return out;
}

LanczosEstimate lanczos_expectation(const std::vector<PauliSum>& obs, const PauliSum& h, double d,
                                    const std::vector<double>& params, Evaluator& ev, std::uint64_t stream) {
  LanczosTerms t = lanczos_terms(obs, h, d);
  std::vector<PauliSum> all = std::move(t.numerators);
  all.push_back(std::move(t.denominator));
  all.push_back(std::move(t.energy_numerator));
  return lanczos_from_estimate(ev.evaluate(all, params, stream), obs.size(), d);
}

LanczosEstimate lanczos_expectation(const PauliSum& o, const PauliSum& h, double d, const std::vector<double>& params,
                                    Evaluator& ev) {
  return lanczos_expectation(std::vector<PauliSum>{o}, h, d, params, ev, ev.new_stream());
}

}  // namespace qmd
