#include "qmd/sampling.hpp"

#include <Eigen/LU>
#include <cmath>

#include "qmd/error.hpp"

namespace qmd {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<double> readout_flips(const NoiseModel* nm, int n) {
  std::vector<double> f(static_cast<std::size_t>(n), 0.0);
  if (nm)
    for (int q = 0; q < n; ++q) f[static_cast<std::size_t>(q)] = nm->readout_error(q);
  return f;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ (b * 0xD1B54A32D192ED03ULL));
}

std::map<std::string, std::int64_t> CountsTable::as_map() const {
  std::map<std::string, std::int64_t> m;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    if (counts[b] == 0.0) continue;
    std::string s(static_cast<std::size_t>(n), '0');
    for (int q = 0; q < n; ++q)
      if ((b >> q) & 1) s[static_cast<std::size_t>(n - 1 - q)] = '1';
    m[s] = std::llround(counts[b]);
  }
  return m;
}

double CountsTable::total() const {
  double t = 0.0;
  for (double c : counts) t += c;
  return t;
}

Eigen::VectorXd apply_readout_confusion(const Eigen::VectorXd& probs, const std::vector<double>& flip) {
  Eigen::VectorXd p = probs;
  for (std::size_t q = 0; q < flip.size(); ++q) {
    const double e = flip[q];
    if (e == 0.0) continue;
    const Eigen::Index step = Eigen::Index{1} << q;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      if (i & step) continue;
      const double a = p[i], b = p[i | step];
      p[i] = (1 - e) * a + e * b;
      p[i | step] = e * a + (1 - e) * b;
    }
  }
  return p;
}

std::vector<double> sample_multinomial(const Eigen::VectorXd& probs, std::int64_t shots, std::mt19937_64& rng) {
  if (shots < 1) throw DomainError("sampling needs at least one shot");
  std::vector<double> counts(static_cast<std::size_t>(probs.size()), 0.0);
  // Sorted uniforms from normalized partial sums of exponential spacings.
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> u(static_cast<std::size_t>(shots));
  double s = 0.0;
  for (auto& v : u) {
    s += expo(rng);
    v = s;
  }
  const double norm = s + expo(rng);
  const double total = probs.sum();
  double cdf = 0.0;
  Eigen::Index k = 0;
  const Eigen::Index last = probs.size() - 1;
  for (double v : u) {
    const double x = v / norm * total;
    while (k < last && cdf + probs[k] <= x) cdf += probs[k++];
    counts[static_cast<std::size_t>(k)] += 1.0;
  }
  return counts;
}

CountsTable sample_distribution(const Eigen::VectorXd& probs, const PauliString& basis, std::int64_t shots,
                                const NoiseModel* nm, std::uint64_t seed) {
  if (probs.size() != (Eigen::Index{1} << basis.n)) throw DomainError("distribution size does not match basis");
  std::mt19937_64 rng(seed);
  const Eigen::VectorXd read = apply_readout_confusion(probs, readout_flips(nm, basis.n));
  CountsTable t;
  t.n = basis.n;
  t.basis = basis;
  t.shots = shots;
  t.counts = sample_multinomial(read, shots, rng);
  return t;
}

CountsTable sample_counts(const Statevector& psi, const MeasurementGroup& group, std::int64_t shots,
                          const NoiseModel* nm, std::uint64_t seed) {
  const Circuit rot = measurement_rotation(group.basis);
  if (nm && nm->any_gate_noise() && !nm->noiseless()) {
    DensityMatrix rho = to_density(psi);
    apply_circuit_with_noise(rot, *nm, rho);
    return sample_distribution(probabilities(rho), group.basis, shots, nm, seed);
  }
  Statevector s = psi;
  apply_circuit(rot, s);
  return sample_distribution(probabilities(s), group.basis, shots, nm, seed);
}

CountsTable sample_counts(const DensityMatrix& rho, const MeasurementGroup& group, std::int64_t shots,
                          const NoiseModel* nm, std::uint64_t seed) {
  const Circuit rot = measurement_rotation(group.basis);
  DensityMatrix r = rho;
  if (nm && nm->any_gate_noise() && !nm->noiseless()) {
    apply_circuit_with_noise(rot, *nm, r);
  } else {
    apply_circuit(rot, r);
  }
  return sample_distribution(probabilities(r), group.basis, shots, nm, seed);
}

Eigen::MatrixXd calibrate_readout_mitigation(const NoiseModel& nm, int n, std::int64_t shots, std::uint64_t seed) {
  if (n > 6) throw ResourceError("readout calibration limited to 6 qubits");
  nm.validate_for(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd a(dim, dim);
  const PauliString zbasis{n, 0, (n == 64) ? ~0ULL : ((1ULL << n) - 1)};
  for (Eigen::Index j = 0; j < dim; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e[j] = 1.0;
    const CountsTable t = sample_distribution(e, zbasis, shots, &nm, derive_seed(seed, 0xCA11B, static_cast<std::uint64_t>(j)));
    for (Eigen::Index i = 0; i < dim; ++i) a(i, j) = t.counts[static_cast<std::size_t>(i)] / static_cast<double>(shots);
  }
  return a;
}

CountsTable mitigate(const CountsTable& table, const Eigen::MatrixXd& assignment) {
  const Eigen::Index dim = static_cast<Eigen::Index>(table.counts.size());
  if (assignment.rows() != dim || assignment.cols() != dim) throw DomainError("assignment matrix size mismatch");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(assignment);
  if (!lu.isInvertible() || lu.rcond() < 1e-10)
    throw NumericalError("readout mitigation unavailable: assignment matrix is singular");
  Eigen::VectorXd m(dim);
  for (Eigen::Index i = 0; i < dim; ++i) m[i] = table.counts[static_cast<std::size_t>(i)];
  Eigen::VectorXd p = lu.solve(m).cwiseMax(0.0);
  const double s = p.sum();
  if (!(s > 0.0)) throw NumericalError("readout mitigation produced an empty distribution");
  p *= static_cast<double>(table.shots) / s;
  CountsTable out = table;
  for (Eigen::Index i = 0; i < dim; ++i) out.counts[static_cast<std::size_t>(i)] = p[i];
  return out;
}

}  // namespace qmd
