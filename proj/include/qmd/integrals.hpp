#pragma once

#include <Eigen/Core>
#include <vector>

#include "qmd/basis.hpp"
#include "qmd/molecule.hpp"

namespace qmd {

/// Zeroth-order Boys function F0(x) = int_0^1 exp(-x t^2) dt.
double boys_f0(double x);

/// Dense rank-4 tensor with n^4 entries, row-major over (i, j, k, l).
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(std::size_t n) : n_(n), data_(n * n * n * n, 0.0) {}
  std::size_t dim() const { return n_; }
  double& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return data_[((i * n_ + j) * n_ + k) * n_ + l];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return data_[((i * n_ + j) * n_ + k) * n_ + l];
  }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct AOIntegrals {
  Eigen::MatrixXd overlap;
  Eigen::MatrixXd kinetic;
  Eigen::MatrixXd nuclear;
  Eigen::MatrixXd hcore;
  Tensor4 eri;  // chemists' notation (ij|kl)
  double nuclear_repulsion = 0.0;
};

AOIntegrals compute_ao_integrals(const Molecule& mol, const std::vector<BasisShell>& basis);

double nuclear_repulsion(const Molecule& mol);

}  // namespace qmd
