#pragma once
// Independent reference implementations used only by the tests.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "qmd/fermion.hpp"
#include "qmd/integrals.hpp"

namespace oracle {

/// Composite Simpson rule on [a, b] with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline double boys_f0(double x) {
  return simpson([x](double t) { return std::exp(-x * t * t); }, 0.0, 1.0, 4000);
}

/// Overlap of two contracted s functions by numeric quadrature. The 3D
/// integrand factorizes, so each primitive pair is a product of three
/// 1D quadratures. Positions in bohr.
inline double contracted_overlap(const std::vector<double>& ea, const std::vector<double>& ca,
                                 const Eigen::Vector3d& A, const std::vector<double>& eb,
                                 const std::vector<double>& cb, const Eigen::Vector3d& B) {
  auto norm = [](double a) { return std::pow(2.0 * a / M_PI, 0.75); };
  double s = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i)
    for (std::size_t j = 0; j < eb.size(); ++j) {
      double prod = 1.0;
      for (int k = 0; k < 3; ++k) {
        const double a = ea[i], b = eb[j], xa = A[k], xb = B[k];
        prod *= simpson([&](double x) { return std::exp(-a * (x - xa) * (x - xa) - b * (x - xb) * (x - xb)); },
                        std::min(xa, xb) - 12.0, std::max(xa, xb) + 12.0, 6000);
      }
      s += ca[i] * cb[j] * norm(ea[i]) * norm(eb[j]) * prod;
    }
  return s;
}

/// Annihilation operator on the 2^n occupation basis, bit j = mode j,
/// sign (-1)^(occupied modes below j).
inline Eigen::MatrixXd annihilation(int j, int n) {
  const int dim = 1 << n;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    if (!(s >> j & 1)) continue;
    int below = 0;
    for (int k = 0; k < j; ++k) below += s >> k & 1;
    a(s ^ (1 << j), s) = (below % 2) ? -1.0 : 1.0;
  }
  return a;
}

/// Second-quantized Hamiltonian as a dense Fock-space matrix.
inline Eigen::MatrixXd fock_matrix(const qmd::FermionHamiltonian& h) {
  const int n = static_cast<int>(h.n_spin_orbitals);
  std::vector<Eigen::MatrixXd> a, ad;
  for (int j = 0; j < n; ++j) {
    a.push_back(annihilation(j, n));
    ad.push_back(a.back().transpose());
  }
  const int dim = 1 << n;
  Eigen::MatrixXd m = h.constant * Eigen::MatrixXd::Identity(dim, dim);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (h.one_body(p, q) != 0.0) m += h.one_body(p, q) * ad[p] * a[q];
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double g = h.two_body(p, q, r, s);
          if (g != 0.0) m += 0.5 * g * ad[p] * ad[q] * a[r] * a[s];
        }
  return m;
}

/// Lowest eigenvalue of the Fock matrix restricted to `n_electrons`
/// (full configuration interaction); all sectors when n_electrons < 0.
inline double fci_energy(const qmd::FermionHamiltonian& h, int n_electrons) {
  const Eigen::MatrixXd m = fock_matrix(h);
  std::vector<int> idx;
  for (int s = 0; s < m.rows(); ++s)
    if (n_electrons < 0 || __builtin_popcount(s) == n_electrons) idx.push_back(s);
  Eigen::MatrixXd b(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = m(idx[i], idx[j]);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(b).eigenvalues()[0];
}

/// Minimal-basis H2 Hartree-Fock energy from symmetry alone: the occupied
/// orbital is (phi0 + phi1)/sqrt(2(1+S)).
inline double h2_hf_energy(const qmd::AOIntegrals& ao) {
  const double S = ao.overlap(0, 1);
  const Eigen::Vector2d c = Eigen::Vector2d(1.0, 1.0) / std::sqrt(2.0 * (1.0 + S));
  double h = c.dot(ao.hcore * c);
  double j = 0.0;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) j += c[p] * c[q] * c[r] * c[s] * ao.eri(p, q, r, s);
  return 2.0 * h + j + ao.nuclear_repulsion;
}

inline const Eigen::Matrix2cd& pauli_matrix(char c) {
  using C = std::complex<double>;
  static const Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity();
  static const Eigen::Matrix2cd X = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  static const Eigen::Matrix2cd Y = (Eigen::Matrix2cd() << 0, C(0, -1), C(0, 1), 0).finished();
  static const Eigen::Matrix2cd Z = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
  switch (c) {
    case 'X': return X;
    case 'Y': return Y;
    case 'Z': return Z;
    default: return I;
  }
}

/// Kronecker product of a word, leftmost character = most significant qubit.
inline Eigen::MatrixXcd word_matrix(const std::string& w) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : w) {
    const Eigen::Matrix2cd& p = pauli_matrix(c);
    Eigen::MatrixXcd k(m.rows() * 2, m.cols() * 2);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) k.block(2 * i, 2 * j, 2, 2) = m(i, j) * p;
    m = k;
  }
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd k(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

inline Eigen::Matrix2cd ry(double t) {
  Eigen::Matrix2cd m;
  m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
  return m;
}

inline Eigen::Matrix2cd u3(double t, double p, double l) {
  using cd = std::complex<double>;
  Eigen::Matrix2cd m;
  m << std::cos(t / 2), -std::exp(cd(0, l)) * std::sin(t / 2), std::exp(cd(0, p)) * std::sin(t / 2),
      std::exp(cd(0, p + l)) * std::cos(t / 2);
  return m;
}

/// Single-qubit gate g on qubit q of n (qubit 0 = least significant).
inline Eigen::MatrixXcd embed(const Eigen::Matrix2cd& g, int q, int n) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int k = n - 1; k >= 0; --k) m = kron(m, k == q ? Eigen::MatrixXcd(g) : Eigen::MatrixXcd::Identity(2, 2));
  return m;
}

/// CNOT as a permutation of basis indices.
inline Eigen::MatrixXcd cnot(int control, int target, int n) {
  const int dim = 1 << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) m(s >> control & 1 ? s ^ (1 << target) : s, s) = 1.0;
  return m;
}

}  // namespace oracle
