#pragma once

#include <Eigen/Core>
#include <vector>

#include "qmd/pauli.hpp"

namespace qmd {

enum class GateKind { U3, U2, RY, RZ, CNOT };

struct Gate {
  GateKind kind;
  int q0 = 0;   // target, or control for CNOT
  int q1 = -1;  // CNOT target
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;

  bool two_qubit() const { return kind == GateKind::CNOT; }
  /// 2x2 unitary of a single-qubit gate.
  Eigen::Matrix2cd matrix() const;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n);

  int n_qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }

  Circuit& u3(int q, double theta, double phi, double lambda);
  Circuit& u2(int q, double phi, double lambda);
  Circuit& ry(int q, double theta);
  Circuit& rz(int q, double theta);
  Circuit& cnot(int control, int target);
  Circuit& append(const Circuit& other);

  int count(GateKind k) const;

 private:
  void check_qubit(int q) const;
  int n_ = 0;
  std::vector<Gate> gates_;
};

/// Number of parameters of build_ry_ansatz.
int ry_ansatz_parameter_count(int n, int depth);

/// RY layer, then per depth a CNOT ladder (q -> q+1) followed by another
/// RY layer. Parameter k of layer l rotates qubit k: params[l * n + k].
Circuit build_ry_ansatz(int n, int depth, const std::vector<double>& params);

/// Rotations mapping the X/Y eigenbasis of each measured qubit of `basis`
/// to the computational basis: U2(0, pi) = H for X, U2(0, pi/2) = H S^dagger for Y.
Circuit measurement_rotation(const PauliString& basis);

}  // namespace qmd
