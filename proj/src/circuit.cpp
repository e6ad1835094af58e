#include "qmd/circuit.hpp"

#include <cmath>
#include <complex>

#include "qmd/error.hpp"
#include "qmd/units.hpp"

namespace qmd {

namespace {

using cd = std::complex<double>;

Eigen::Matrix2cd u3_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Eigen::Matrix2cd m;
  m << c, -std::exp(cd(0, lambda)) * s, std::exp(cd(0, phi)) * s, std::exp(cd(0, phi + lambda)) * c;
  return m;
}

void check_angle(double a) {
  if (!std::isfinite(a)) throw DomainError("circuit: non-finite gate angle");
}

}  // namespace

Eigen::Matrix2cd Gate::matrix() const {
  switch (kind) {
    case GateKind::U3: return u3_matrix(theta, phi, lambda);
    case GateKind::U2: return u3_matrix(units::kPi / 2, phi, lambda);
    case GateKind::RY: {
      const double c = std::cos(theta / 2), s = std::sin(theta / 2);
      Eigen::Matrix2cd m;
      m << c, -s, s, c;
      return m;
    }
    case GateKind::RZ: {
      Eigen::Matrix2cd m;
      m << std::exp(cd(0, -theta / 2)), 0, 0, std::exp(cd(0, theta / 2));
      return m;
    }
    case GateKind::CNOT: break;
  }
  throw DomainError("Gate::matrix: not a single-qubit gate");
}

Circuit::Circuit(int n) : n_(n) {
  if (n < 0) throw DomainError("circuit: negative qubit count");
}

void Circuit::check_qubit(int q) const {
  if (q < 0 || q >= n_) throw DomainError("circuit: qubit index " + std::to_string(q) + " out of range");
}

Circuit& Circuit::u3(int q, double theta, double phi, double lambda) {
  check_qubit(q);
  check_angle(theta), check_angle(phi), check_angle(lambda);
  gates_.push_back({GateKind::U3, q, -1, theta, phi, lambda});
  return *this;
}

Circuit& Circuit::u2(int q, double phi, double lambda) {
  check_qubit(q);
  check_angle(phi), check_angle(lambda);
  gates_.push_back({GateKind::U2, q, -1, 0.0, phi, lambda});
  return *this;
}

Circuit& Circuit::ry(int q, double theta) {
  check_qubit(q);
  check_angle(theta);
  gates_.push_back({GateKind::RY, q, -1, theta, 0.0, 0.0});
  return *this;
}

Circuit& Circuit::rz(int q, double theta) {
  check_qubit(q);
  check_angle(theta);
  gates_.push_back({GateKind::RZ, q, -1, theta, 0.0, 0.0});
  return *this;
}

Circuit& Circuit::cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw DomainError("circuit: CNOT control equals target");
  gates_.push_back({GateKind::CNOT, control, target});
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_ != n_) throw DomainError("circuit: appending circuit of different width");
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

int Circuit::count(GateKind k) const {
  int c = 0;
  for (const auto& g : gates_) c += g.kind == k;
  return c;
}

int ry_ansatz_parameter_count(int n, int depth) { return n * (depth + 1); }

Circuit build_ry_ansatz(int n, int depth, const std::vector<double>& params) {
  if (n < 1 || depth < 0) throw DomainError("ansatz: need n >= 1 and depth >= 0");
  const auto expected = static_cast<std::size_t>(ry_ansatz_parameter_count(n, depth));
  if (params.size() != expected)
    throw DomainError("ansatz: expected " + std::to_string(expected) + " parameters, got " +
                      std::to_string(params.size()));
  Circuit c(n);
  for (int q = 0; q < n; ++q) c.ry(q, params[q]);
  for (int l = 1; l <= depth; ++l) {
    for (int q = 0; q + 1 < n; ++q) c.cnot(q, q + 1);
    for (int q = 0; q < n; ++q) c.ry(q, params[l * n + q]);
  }
  return c;
}

Circuit measurement_rotation(const PauliString& basis) {
  Circuit c(basis.n);
  for (int q = 0; q < basis.n; ++q) {
    const char p = basis.at(q);
    if (p == 'X') c.u2(q, 0.0, units::kPi);
    else if (p == 'Y') c.u2(q, 0.0, units::kPi / 2);
  }
  return c;
}

}  // namespace qmd
