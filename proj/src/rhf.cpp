#include "qmd/rhf.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qmd/error.hpp"

namespace qmd {

void fix_phases(Eigen::MatrixXd& c) {
  for (Eigen::Index j = 0; j < c.cols(); ++j) {
    Eigen::Index imax = 0;
    c.col(j).cwiseAbs().maxCoeff(&imax);
    if (c(imax, j) < 0.0) c.col(j) *= -1.0;
  }
}

namespace {

Eigen::MatrixXd build_fock(const AOIntegrals& ints, const Eigen::MatrixXd& p) {
  const std::size_t n = ints.hcore.rows();
  Eigen::MatrixXd f = ints.hcore;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t v = 0; v < n; ++v) {
      double g = 0.0;
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t s = 0; s < n; ++s)
          g += p(l, s) * (ints.eri(m, v, l, s) - 0.5 * ints.eri(m, l, v, s));
      f(m, v) += g;
    }
  return f;
}

// Exactly degenerate columns ordered lexicographically by coefficients.
void order_degenerate(Eigen::MatrixXd& c, Eigen::VectorXd& e) {
  const Eigen::Index n = e.size();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && std::abs(e(end) - e(start)) < 1e-10) ++end;
    if (end - start > 1) {
      std::vector<Eigen::Index> idx(end - start);
      std::iota(idx.begin(), idx.end(), start);
      std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
        for (Eigen::Index r = 0; r < c.rows(); ++r) {
          if (std::abs(c(r, a) - c(r, b)) > 1e-12) return c(r, a) > c(r, b);
        }
        return a < b;
      });
      Eigen::MatrixXd block(c.rows(), end - start);
      for (std::size_t k = 0; k < idx.size(); ++k) block.col(k) = c.col(idx[k]);
      c.middleCols(start, end - start) = block;
    }
    start = end;
  }
}

}  // namespace

std::vector<int> align_orbitals(Eigen::MatrixXd& c, Eigen::VectorXd& energies, const OrbitalReference& reference,
                                const Eigen::MatrixXd& s) {
  const Eigen::Index n = c.cols();
  if (reference.coefficients.rows() != c.rows() || reference.coefficients.cols() != n)
    throw DomainError("align_orbitals: reference shape mismatch");
  Eigen::MatrixXd m = reference.coefficients.transpose() * s * c;

  // Greedy maximum-|overlap| assignment of new columns to reference slots.
  std::vector<int> perm(n, -1);
  std::vector<bool> used_ref(n, false), used_new(n, false);
  for (Eigen::Index step = 0; step < n; ++step) {
    double best = -1.0;
    Eigen::Index bi = 0, bj = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (used_ref[i]) continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (used_new[j]) continue;
        if (std::abs(m(i, j)) > best) {
          best = std::abs(m(i, j));
          bi = i;
          bj = j;
        }
      }
    }
    perm[bi] = static_cast<int>(bj);
    used_ref[bi] = used_new[bj] = true;
  }
  Eigen::MatrixXd cp(c.rows(), n);
  Eigen::VectorXd ep(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cp.col(i) = c.col(perm[i]);
    ep(i) = energies(perm[i]);
  }

  // Blocks of near-degenerate reference orbitals (contiguous in energy order).
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return reference.energies(a) < reference.energies(b); });
  const Eigen::MatrixXd mp = reference.coefficients.transpose() * s * cp;
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() &&
           reference.energies(order[end]) - reference.energies(order[end - 1]) < reference.degeneracy_tol)
      ++end;
    const auto k = static_cast<Eigen::Index>(end - start);
    Eigen::MatrixXd block(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b) block(a, b) = mp(order[start + a], order[start + b]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(block, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd q = svd.matrixV() * svd.matrixU().transpose();
    Eigen::MatrixXd cols(cp.rows(), k);
    for (Eigen::Index b = 0; b < k; ++b) cols.col(b) = cp.col(order[start + b]);
    const Eigen::MatrixXd rotated = cols * q;
    Eigen::VectorXd eb(k);
    for (Eigen::Index b = 0; b < k; ++b) eb(b) = ep(order[start + b]);
    // Rotated orbitals carry the overlap-weighted block energies.
    const Eigen::VectorXd er = (q.cwiseAbs2().transpose() * eb);
    for (Eigen::Index b = 0; b < k; ++b) {
      cp.col(order[start + b]) = rotated.col(b);
      ep(order[start + b]) = er(b);
    }
    start = end;
  }
  c = cp;
  energies = ep;
  return perm;
}

MOIntegrals transform_integrals(const AOIntegrals& ints, const Eigen::MatrixXd& c) {
  const std::size_t n = c.rows();
  const std::size_t m = c.cols();
  MOIntegrals mo;
  mo.h = c.transpose() * ints.hcore * c;
  mo.nuclear_repulsion = ints.nuclear_repulsion;
  mo.coefficients = c;

  // Naive transform; basis sizes here are tiny.
  Tensor4 chem(m);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t s = 0; s < m; ++s) {
          double v = 0.0;
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
              const double cab = c(a, p) * c(b, q);
              if (cab == 0.0) continue;
              for (std::size_t cc = 0; cc < n; ++cc)
                for (std::size_t d = 0; d < n; ++d) v += cab * c(cc, r) * c(d, s) * ints.eri(a, b, cc, d);
            }
          chem(p, q, r, s) = v;
        }

  // Physicists' layout used throughout: g(r,s,t,u) = (ru|st).
  mo.g = Tensor4(m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t s = 0; s < m; ++s)
      for (std::size_t t = 0; t < m; ++t)
        for (std::size_t u = 0; u < m; ++u) mo.g(r, s, t, u) = chem(r, u, s, t);
  return mo;
}

MOIntegrals run_rhf(const AOIntegrals& ints, int n_electrons, const SCFOptions& opts,
                    const OrbitalReference* reference) {
  const Eigen::Index n = ints.hcore.rows();
  if (n_electrons <= 0 || n_electrons % 2 != 0) throw DomainError("run_rhf: electron count must be positive and even");
  if (n_electrons > 2 * n) throw DomainError("run_rhf: more electrons than spin orbitals");
  const int n_occ = n_electrons / 2;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s_eig(ints.overlap);
  if (s_eig.eigenvalues().minCoeff() <= 1e-12) throw NumericalError("run_rhf: overlap matrix is singular");
  const Eigen::MatrixXd x =
      s_eig.eigenvectors() * s_eig.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() * s_eig.eigenvectors().transpose();

  auto solve = [&](const Eigen::MatrixXd& f, Eigen::MatrixXd& c, Eigen::VectorXd& e) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x.transpose() * f * x);
    c = x * eig.eigenvectors();
    e = eig.eigenvalues();
  };

  Eigen::MatrixXd c;
  Eigen::VectorXd e;
  solve(ints.hcore, c, e);
  Eigen::MatrixXd p = 2.0 * c.leftCols(n_occ) * c.leftCols(n_occ).transpose();
  double energy = 0.0;
  MOIntegrals out;
  bool converged = false;
  int it = 0;
  for (it = 1; it <= opts.max_iterations; ++it) {
    const Eigen::MatrixXd f = build_fock(ints, p);
    const double e_new = 0.5 * (p.cwiseProduct(ints.hcore + f)).sum() + ints.nuclear_repulsion;
    out.energy_trace.push_back(e_new);
    solve(f, c, e);
    const Eigen::MatrixXd p_new = 2.0 * c.leftCols(n_occ) * c.leftCols(n_occ).transpose();
    const double dp = std::sqrt((p_new - p).squaredNorm() / static_cast<double>(n * n));
    const double de = std::abs(e_new - energy);
    p = p_new;
    energy = e_new;
    if (it > 1 && de < opts.energy_tol && dp < opts.density_tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "SCF did not converge in " << opts.max_iterations << " iterations; last energies:";
    const std::size_t k = out.energy_trace.size();
    for (std::size_t i = k > 5 ? k - 5 : 0; i < k; ++i) msg << ' ' << out.energy_trace[i];
    throw NumericalError(msg.str());
  }

  // Energy consistent with the final density.
  const Eigen::MatrixXd f = build_fock(ints, p);
  energy = 0.5 * (p.cwiseProduct(ints.hcore + f)).sum() + ints.nuclear_repulsion;

  if (reference) {
    align_orbitals(c, e, *reference, ints.overlap);
  } else {
    fix_phases(c);
    order_degenerate(c, e);
  }
  auto trace = std::move(out.energy_trace);
  out = transform_integrals(ints, c);
  out.energy_trace = std::move(trace);
  out.orbital_energies = e;
  out.hf_energy = energy;
  out.iterations = it;
  return out;
}

}  // namespace qmd
