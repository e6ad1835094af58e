#pragma once

#include <Eigen/Core>

#include "qmd/circuit.hpp"
#include "qmd/noise.hpp"

namespace qmd {

constexpr int kMaxStatevectorQubits = 20;
constexpr int kMaxDensityQubits = 10;

using Statevector = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

Statevector zero_state(int n);
Statevector evolve_statevector(const Circuit& c);
void apply_circuit(const Circuit& c, Statevector& psi);

DensityMatrix zero_density(int n);
DensityMatrix to_density(const Statevector& psi);
/// Noiseless unitary evolution of a density matrix.
void apply_circuit(const Circuit& c, DensityMatrix& rho);

/// Noisy evolution from |0...0>: after every gate, depolarizing then
/// thermal relaxation on the qubits the gate touched.
DensityMatrix evolve_density_with_noise(const Circuit& c, const NoiseModel& nm);
void apply_circuit_with_noise(const Circuit& c, const NoiseModel& nm, DensityMatrix& rho);

/// rho -> p Tr_Q[rho] (x) I/2^k + (1 - p) rho on qubits Q.
void apply_depolarizing(DensityMatrix& rho, const std::vector<int>& qubits, double p);
void apply_relaxation(DensityMatrix& rho, int q, const RelaxationChannel& ch);

/// Computational-basis probabilities (clipped at 0, renormalized).
Eigen::VectorXd probabilities(const Statevector& psi);
Eigen::VectorXd probabilities(const DensityMatrix& rho);

}  // namespace qmd
