#include "qmd/integrals.hpp"

#include <array>
#include <cmath>

#include "qmd/error.hpp"
#include "qmd/units.hpp"

namespace qmd {

double boys_f0(double x) {
  if (!(x >= 0.0)) throw DomainError("boys_f0: argument must be non-negative");
  if (x < 1e-3) {
    // sum_k (-x)^k / (k! (2k+1)); six terms leave an error below 1e-21.
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 6; ++k) {
      term *= -x / k;
      sum += term / (2 * k + 1);
    }
    return sum;
  }
  const double r = std::sqrt(x);
  return 0.5 * std::sqrt(units::kPi / x) * std::erf(r);
}

double nuclear_repulsion(const Molecule& mol) {
  double e = 0.0;
  const auto& atoms = mol.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      const double r = (atoms[i].position - atoms[j].position).norm() * units::kBohrPerAngstrom;
      if (r < 1e-12) throw DomainError("coincident nuclei " + std::to_string(i) + ", " + std::to_string(j));
      e += atoms[i].atomic_number * atoms[j].atomic_number / r;
    }
  return e;
}

namespace {

constexpr double kPi = units::kPi;

struct Primitive {
  double alpha;
  double coeff;  // includes primitive normalization and contraction renormalization
  Eigen::Vector3d center;  // bohr
};

using Contracted = std::vector<Primitive>;

double prim_overlap(const Primitive& a, const Primitive& b) {
  const double p = a.alpha + b.alpha;
  const double r2 = (a.center - b.center).squaredNorm();
  return std::pow(kPi / p, 1.5) * std::exp(-a.alpha * b.alpha / p * r2);
}

double prim_kinetic(const Primitive& a, const Primitive& b) {
  const double p = a.alpha + b.alpha;
  const double mu = a.alpha * b.alpha / p;
  const double r2 = (a.center - b.center).squaredNorm();
  return mu * (3.0 - 2.0 * mu * r2) * std::pow(kPi / p, 1.5) * std::exp(-mu * r2);
}

double prim_nuclear(const Primitive& a, const Primitive& b, const Eigen::Vector3d& c, double z) {
  const double p = a.alpha + b.alpha;
  const double r2 = (a.center - b.center).squaredNorm();
  const Eigen::Vector3d pc = (a.alpha * a.center + b.alpha * b.center) / p - c;
  return -2.0 * kPi / p * z * std::exp(-a.alpha * b.alpha / p * r2) * boys_f0(p * pc.squaredNorm());
}

double prim_eri(const Primitive& a, const Primitive& b, const Primitive& c, const Primitive& d) {
  const double p = a.alpha + b.alpha;
  const double q = c.alpha + d.alpha;
  const Eigen::Vector3d pp = (a.alpha * a.center + b.alpha * b.center) / p;
  const Eigen::Vector3d qq = (c.alpha * c.center + d.alpha * d.center) / q;
  const double kab = std::exp(-a.alpha * b.alpha / p * (a.center - b.center).squaredNorm());
  const double kcd = std::exp(-c.alpha * d.alpha / q * (c.center - d.center).squaredNorm());
  const double t = p * q / (p + q) * (pp - qq).squaredNorm();
  return 2.0 * std::pow(kPi, 2.5) / (p * q * std::sqrt(p + q)) * kab * kcd * boys_f0(t);
}

template <typename F>
double contract2(const Contracted& a, const Contracted& b, F&& f) {
  double s = 0.0;
  for (const auto& pa : a)
    for (const auto& pb : b) s += pa.coeff * pb.coeff * f(pa, pb);
  return s;
}

}  // namespace

AOIntegrals compute_ao_integrals(const Molecule& mol, const std::vector<BasisShell>& basis) {
  mol.validate();
  const std::size_t n = basis.size();
  std::vector<Contracted> funcs;
  funcs.reserve(n);
  for (const auto& shell : basis) {
    if (shell.center >= mol.size()) throw DomainError("basis shell references a missing atom");
    if (shell.exponents.size() != shell.coefficients.size() || shell.exponents.empty())
      throw DomainError("basis shell has inconsistent primitive data");
    const Eigen::Vector3d c = mol.atoms()[shell.center].position * units::kBohrPerAngstrom;
    Contracted f;
    for (std::size_t k = 0; k < shell.exponents.size(); ++k) {
      const double a = shell.exponents[k];
      if (!(a > 0.0)) throw DomainError("basis exponent must be positive");
      f.push_back({a, shell.coefficients[k] * std::pow(2.0 * a / kPi, 0.75), c});
    }
    const double self = contract2(f, f, prim_overlap);
    for (auto& p : f) p.coeff /= std::sqrt(self);
    funcs.push_back(std::move(f));
  }

  AOIntegrals out;
  out.overlap.resize(n, n);
  out.kinetic.resize(n, n);
  out.nuclear.resize(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double s = contract2(funcs[i], funcs[j], prim_overlap);
      const double t = contract2(funcs[i], funcs[j], prim_kinetic);
      double v = 0.0;
      for (const auto& atom : mol.atoms()) {
        const Eigen::Vector3d c = atom.position * units::kBohrPerAngstrom;
        const double z = atom.atomic_number;
        v += contract2(funcs[i], funcs[j],
                       [&](const Primitive& a, const Primitive& b) { return prim_nuclear(a, b, c, z); });
      }
      out.overlap(i, j) = out.overlap(j, i) = s;
      out.kinetic(i, j) = out.kinetic(j, i) = t;
      out.nuclear(i, j) = out.nuclear(j, i) = v;
    }
  out.hcore = out.kinetic + out.nuclear;

  out.eri = Tensor4(n);
  auto& g = out.eri;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l <= k; ++l) {
          const std::size_t ij = i * (i + 1) / 2 + j, kl = k * (k + 1) / 2 + l;
          if (kl > ij) continue;
          double v = 0.0;
          for (const auto& a : funcs[i])
            for (const auto& b : funcs[j])
              for (const auto& c : funcs[k])
                for (const auto& d : funcs[l]) v += a.coeff * b.coeff * c.coeff * d.coeff * prim_eri(a, b, c, d);
          for (auto [p, q, r, s] : {std::array{i, j, k, l}, std::array{j, i, k, l}, std::array{i, j, l, k},
                                    std::array{j, i, l, k}, std::array{k, l, i, j}, std::array{l, k, i, j},
                                    std::array{k, l, j, i}, std::array{l, k, j, i}})
            g(p, q, r, s) = v;
        }
  out.nuclear_repulsion = nuclear_repulsion(mol);
  return out;
}

}  // namespace qmd
