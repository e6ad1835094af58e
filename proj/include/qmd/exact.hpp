#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "qmd/pauli.hpp"

namespace qmd {

constexpr int kMaxDenseQubits = 12;

/// Dense 2^n x 2^n matrix of a Pauli sum; basis index bit q is qubit q.
Eigen::MatrixXcd dense_matrix(const PauliSum& h);

/// Dense matrix of a single Pauli string built by Kronecker products.
Eigen::MatrixXcd kron_matrix(const PauliString& p);

struct ExactResult {
  double energy = 0.0;
  Eigen::VectorXcd state;     // full 2^n amplitudes
  Eigen::VectorXd spectrum;   // ascending, within the searched space
  int degeneracy = 1;
};

/// Lowest eigenpair of h. Degenerate ground spaces are resolved to the
/// normalized projection of the first computational basis state with
/// nonzero weight in the space; the state's first nonzero amplitude is
/// made real and positive.
ExactResult exact_diagonalize(const PauliSum& h);

/// Same, restricted to the computational basis states where the diagonal
/// (Z-only) operator `number` has eigenvalue `value`.
ExactResult exact_diagonalize_sector(const PauliSum& h, const PauliSum& number, double value);

/// Indices of computational basis states with <b|number|b> == value.
std::vector<std::uint64_t> diagonal_sector(const PauliSum& number, double value);

/// <psi|h|psi> for a normalized state.
double expectation(const PauliSum& h, const Eigen::VectorXcd& psi);

/// h|psi> without building the matrix.
Eigen::VectorXcd apply(const PauliSum& h, const Eigen::VectorXcd& psi);

}  // namespace qmd
