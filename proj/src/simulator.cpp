#include "qmd/simulator.hpp"

#include <cmath>
#include <complex>

#include "qmd/error.hpp"

namespace qmd {

namespace {

using cd = std::complex<double>;

// Left-multiplies the rows of m by a single-qubit operator on qubit q.
template <typename M>
void left_single(M& m, int q, const Eigen::Matrix2cd& u) {
  const Eigen::Index dim = m.rows();
  const Eigen::Index step = Eigen::Index{1} << q;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (i & step) continue;
    const Eigen::Index j = i | step;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const cd a = m(i, c), b = m(j, c);
      m(i, c) = u(0, 0) * a + u(0, 1) * b;
      m(j, c) = u(1, 0) * a + u(1, 1) * b;
    }
  }
}

template <typename M>
void left_cnot(M& m, int control, int target) {
  const Eigen::Index cbit = Eigen::Index{1} << control, tbit = Eigen::Index{1} << target;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    if ((i & cbit) && !(i & tbit)) m.row(i).swap(m.row(i | tbit));
}

// K rho K^dagger for Hermitian rho using only left products.
DensityMatrix conjugate(const DensityMatrix& rho, int q, const Eigen::Matrix2cd& k) {
  DensityMatrix a = rho;
  left_single(a, q, k);
  DensityMatrix b = a.adjoint();
  left_single(b, q, k);
  return b;
}

const Eigen::Matrix2cd& pauli(int which) {
  static const Eigen::Matrix2cd m[3] = {
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, cd(0, -1), cd(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
  };
  return m[which];
}

std::vector<int> touched(const Gate& g) {
  if (g.two_qubit()) return {g.q0, g.q1};
  return {g.q0};
}

}  // namespace

Statevector zero_state(int n) {
  if (n > kMaxStatevectorQubits) throw ResourceError("statevector limited to 20 qubits");
  Statevector psi = Statevector::Zero(Eigen::Index{1} << n);
  psi[0] = 1.0;
  return psi;
}

void apply_circuit(const Circuit& c, Statevector& psi) {
  if (psi.size() != (Eigen::Index{1} << c.n_qubits())) throw DomainError("statevector size does not match circuit");
  for (const auto& g : c.gates()) {
    if (g.two_qubit())
      left_cnot(psi, g.q0, g.q1);
    else
      left_single(psi, g.q0, g.matrix());
  }
}

Statevector evolve_statevector(const Circuit& c) {
  Statevector psi = zero_state(c.n_qubits());
  apply_circuit(c, psi);
  return psi;
}

DensityMatrix zero_density(int n) {
  if (n > kMaxDensityQubits) throw ResourceError("density-matrix simulation limited to 10 qubits");
  const Eigen::Index d = Eigen::Index{1} << n;
  DensityMatrix rho = DensityMatrix::Zero(d, d);
  rho(0, 0) = 1.0;
  return rho;
}

DensityMatrix to_density(const Statevector& psi) { return psi * psi.adjoint(); }

void apply_circuit(const Circuit& c, DensityMatrix& rho) {
  if (rho.rows() != (Eigen::Index{1} << c.n_qubits())) throw DomainError("density matrix size does not match circuit");
  for (const auto& g : c.gates()) {
    if (g.two_qubit()) {
      left_cnot(rho, g.q0, g.q1);
      DensityMatrix t = rho.adjoint();
      left_cnot(t, g.q0, g.q1);
      rho = std::move(t);
    } else {
      rho = conjugate(rho, g.q0, g.matrix());
    }
  }
}

void apply_depolarizing(DensityMatrix& rho, const std::vector<int>& qubits, double p) {
  if (p <= 0.0) return;
  if (p > 1.0) throw DomainError("depolarizing probability above 1");
  DensityMatrix mixed = rho;
  for (int q : qubits) {
    DensityMatrix acc = mixed;
    for (int k = 0; k < 3; ++k) acc += conjugate(mixed, q, pauli(k));
    mixed = 0.25 * acc;
  }
  rho = (1.0 - p) * rho + p * mixed;
}

void apply_relaxation(DensityMatrix& rho, int q, const RelaxationChannel& ch) {
  const double g = ch.damping, pe = ch.excited_population;
  if (g > 0.0) {
    if (g > 1.0) throw DomainError("damping probability above 1");
    const double sg = std::sqrt(g), s1 = std::sqrt(1.0 - g);
    // Generalized amplitude damping towards excited population pe.
    Eigen::Matrix2cd k0, k1, k2, k3;
    k0 << 1, 0, 0, s1;
    k1 << 0, sg, 0, 0;
    k2 << s1, 0, 0, 1;
    k3 << 0, 0, sg, 0;
    DensityMatrix out = (1.0 - pe) * (conjugate(rho, q, k0) + conjugate(rho, q, k1));
    if (pe > 0.0) out += pe * (conjugate(rho, q, k2) + conjugate(rho, q, k3));
    rho = std::move(out);
  }
  if (ch.dephasing > 0.0) {
    if (ch.dephasing > 1.0) throw DomainError("dephasing probability above 1");
    rho = (1.0 - ch.dephasing) * rho + ch.dephasing * conjugate(rho, q, pauli(2));
  }
}

void apply_circuit_with_noise(const Circuit& c, const NoiseModel& nm, DensityMatrix& rho) {
  if (rho.rows() != (Eigen::Index{1} << c.n_qubits())) throw DomainError("density matrix size does not match circuit");
  nm.validate_for(c.n_qubits());
  for (const auto& g : c.gates()) {
    double duration;
    double p;
    if (g.two_qubit()) {
      left_cnot(rho, g.q0, g.q1);
      DensityMatrix t = rho.adjoint();
      left_cnot(t, g.q0, g.q1);
      rho = std::move(t);
      duration = nm.cnot_ns;
      p = nm.cnot_error(g.q0, g.q1);
    } else {
      rho = conjugate(rho, g.q0, g.matrix());
      duration = nm.single_gate_ns;
      p = nm.single_gate_error(g.q0);
    }
    const auto qs = touched(g);
    apply_depolarizing(rho, qs, p);
    for (int q : qs) apply_relaxation(rho, q, nm.relaxation(q, duration));
  }
}

DensityMatrix evolve_density_with_noise(const Circuit& c, const NoiseModel& nm) {
  DensityMatrix rho = zero_density(c.n_qubits());
  apply_circuit_with_noise(c, nm, rho);
  return rho;
}

namespace {

Eigen::VectorXd normalized(Eigen::VectorXd p) {
  p = p.cwiseMax(0.0);
  const double s = p.sum();
  if (!(s > 0.0)) throw NumericalError("state has zero norm");
  return p / s;
}

}  // namespace

Eigen::VectorXd probabilities(const Statevector& psi) { return normalized(psi.cwiseAbs2()); }

Eigen::VectorXd probabilities(const DensityMatrix& rho) { return normalized(rho.diagonal().real()); }

}  // namespace qmd
