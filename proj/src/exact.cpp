#include "qmd/exact.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <complex>

#include "qmd/error.hpp"

namespace qmd {

namespace {

using cd = std::complex<double>;

void check_size(int n) {
  if (n > kMaxDenseQubits)
    throw ResourceError("dense diagonalization limited to " + std::to_string(kMaxDenseQubits) + " qubits, got " +
                        std::to_string(n));
}

// P|b> = i^{|x&z|} (-1)^{|z&b|} |b ^ x>
cd string_amplitude(const PauliString& p, std::uint64_t b) {
  static const cd ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cd a = ipow[p.y_count() & 3];
  if (std::popcount(p.z & b) & 1) a = -a;
  return a;
}

bool is_real_operator(const PauliSum& h) {
  for (const auto& t : h.terms())
    if (t.string.y_count() % 2) return false;
  return true;
}

void fix_global_phase(Eigen::VectorXcd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-10) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      return;
    }
  }
}

// Ground eigenpair of a Hermitian matrix restricted to `basis` indices of
// a 2^n space, with the degeneracy rule of exact_diagonalize.
ExactResult lowest(const Eigen::MatrixXcd& m, const std::vector<std::uint64_t>& basis, std::size_t full_dim) {
  const Eigen::Index d = static_cast<Eigen::Index>(basis.size());
  if (d == 0) throw DomainError("exact diagonalization: empty sector");

  Eigen::VectorXd evals;
  Eigen::MatrixXcd evecs;
  const bool real = (m.imag().array().abs().maxCoeff() == 0.0);
  if (real) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real());
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
    evals = es.eigenvalues();
    evecs = es.eigenvectors().cast<cd>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
    evals = es.eigenvalues();
    evecs = es.eigenvectors();
  }

  const double e0 = evals[0];
  const double tol = 1e-9 * std::max(1.0, std::abs(e0));
  int k = 1;
  while (k < d && evals[k] - e0 < tol) ++k;

  Eigen::VectorXcd sub;
  if (k == 1) {
    sub = evecs.col(0);
  } else {
    const Eigen::MatrixXcd g = evecs.leftCols(k);
    for (Eigen::Index i = 0; i < d; ++i) {
      Eigen::VectorXcd proj = g * g.row(i).adjoint();
      if (proj.norm() > 1e-6) {
        sub = proj / proj.norm();
        break;
      }
    }
  }
  fix_global_phase(sub);

  ExactResult r;
  r.energy = e0;
  r.spectrum = evals;
  r.degeneracy = k;
  r.state = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(full_dim));
  for (Eigen::Index i = 0; i < d; ++i) r.state[static_cast<Eigen::Index>(basis[i])] = sub[i];
  return r;
}

}  // namespace

Eigen::MatrixXcd kron_matrix(const PauliString& p) {
  check_size(p.n);
  static const Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd X, Y, Z;
  X << 0, 1, 1, 0;
  Y << 0, cd(0, -1), cd(0, 1), 0;
  Z << 1, 0, 0, -1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  // The leftmost factor is the highest qubit.
  for (int q = p.n - 1; q >= 0; --q) {
    const char c = p.at(q);
    const Eigen::Matrix2cd& f = c == 'X' ? X : c == 'Y' ? Y : c == 'Z' ? Z : I;
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = m(i, j) * f;
    m = std::move(next);
  }
  return m;
}

Eigen::MatrixXcd dense_matrix(const PauliSum& h) {
  const int n = h.n_qubits();
  check_size(n);
  const std::uint64_t dim = 1ULL << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : h.terms())
    for (std::uint64_t b = 0; b < dim; ++b)
      m(static_cast<Eigen::Index>(b ^ t.string.x), static_cast<Eigen::Index>(b)) +=
          t.coeff * string_amplitude(t.string, b);
  return m;
}

ExactResult exact_diagonalize(const PauliSum& h) {
  const int n = h.n_qubits();
  check_size(n);
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::uint64_t> basis(dim);
  for (std::size_t b = 0; b < dim; ++b) basis[b] = b;
  Eigen::MatrixXcd m = dense_matrix(h);
  if (is_real_operator(h)) m = m.real().cast<cd>();
  return lowest(m, basis, dim);
}

std::vector<std::uint64_t> diagonal_sector(const PauliSum& number, double value) {
  const int n = number.n_qubits();
  check_size(n);
  for (const auto& t : number.terms())
    if (t.string.x != 0) throw DomainError("sector operator must be diagonal (Z strings only)");
  std::vector<std::uint64_t> out;
  for (std::uint64_t b = 0; b < (1ULL << n); ++b) {
    double v = 0.0;
    for (const auto& t : number.terms()) v += (std::popcount(t.string.z & b) & 1) ? -t.coeff : t.coeff;
    if (std::abs(v - value) < 1e-9) out.push_back(b);
  }
  return out;
}

ExactResult exact_diagonalize_sector(const PauliSum& h, const PauliSum& number, double value) {
  if (number.n_qubits() != h.n_qubits()) throw DomainError("sector operator qubit count mismatch");
  const auto basis = diagonal_sector(number, value);
  const Eigen::MatrixXcd full = dense_matrix(h);
  const Eigen::Index d = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      m(i, j) = full(static_cast<Eigen::Index>(basis[i]), static_cast<Eigen::Index>(basis[j]));
  if (is_real_operator(h)) m = m.real().cast<cd>();
  return lowest(m, basis, std::size_t{1} << h.n_qubits());
}

Eigen::VectorXcd apply(const PauliSum& h, const Eigen::VectorXcd& psi) {
  const std::uint64_t dim = 1ULL << h.n_qubits();
  if (static_cast<std::uint64_t>(psi.size()) != dim) throw DomainError("state dimension mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
  for (const auto& t : h.terms())
    for (std::uint64_t b = 0; b < dim; ++b)
      out[static_cast<Eigen::Index>(b ^ t.string.x)] +=
          t.coeff * string_amplitude(t.string, b) * psi[static_cast<Eigen::Index>(b)];
  return out;
}

double expectation(const PauliSum& h, const Eigen::VectorXcd& psi) { return psi.dot(apply(h, psi)).real(); }

}  // namespace qmd
