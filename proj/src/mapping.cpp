#include "qmd/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qmd/error.hpp"
#include "qmd/exact.hpp"

namespace qmd {

namespace {

using cd = std::complex<double>;

std::uint64_t bit(int q) { return 1ULL << q; }

std::uint64_t range_mask(int lo, int hi) {  // qubits lo..hi-1
  std::uint64_t m = 0;
  for (int q = lo; q < hi; ++q) m |= bit(q);
  return m;
}

}  // namespace

ComplexPauliSum creation_operator(int j, int n, FermionEncoding enc) {
  if (j < 0 || j >= n) throw DomainError("creation_operator: mode out of range");
  ComplexPauliSum a(n);
  if (enc == FermionEncoding::JordanWigner) {
    // 1/2 Z_{<j} (X_j - i Y_j)
    const std::uint64_t zs = range_mask(0, j);
    a.add(0.5, PauliString{n, bit(j), zs});
    a.add(cd(0, -0.5), PauliString{n, bit(j), zs | bit(j)});
  } else {
    // 1/2 X_{>j} (Z_{j-1} X_j - i Y_j)
    const std::uint64_t xs = range_mask(j + 1, n);
    const std::uint64_t zprev = j > 0 ? bit(j - 1) : 0;
    a.add(0.5, PauliString{n, xs | bit(j), zprev});
    a.add(cd(0, -0.5), PauliString{n, xs | bit(j), bit(j)});
  }
  return a;
}

PauliSum map_fermionic(const FermionHamiltonian& h, FermionEncoding enc) {
  const int n = static_cast<int>(h.n_spin_orbitals);
  if (h.one_body.rows() != n || h.one_body.cols() != n || h.two_body.dim() != h.n_spin_orbitals)
    throw DomainError("FermionHamiltonian: inconsistent dimensions");
  std::vector<ComplexPauliSum> cr(n), an(n);
  for (int p = 0; p < n; ++p) {
    cr[p] = creation_operator(p, n, enc);
    an[p] = cr[p].adjoint();
  }
  constexpr double kSkip = 1e-14;
  ComplexPauliSum acc(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const double c = h.one_body(p, q);
      if (std::abs(c) < kSkip) continue;
      acc += (cr[p] * an[q]) * cd(c);
    }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      const ComplexPauliSum pq = cr[p] * cr[q];
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          if (r == s) continue;
          const double c = h.two_body(p, q, r, s);
          if (std::abs(c) < kSkip) continue;
          acc += (pq * (an[r] * an[s])) * cd(0.5 * c);
        }
    }
  acc.add(h.constant, PauliString::identity(n));
  acc.prune();
  return acc.to_real().canonicalize();
}

PauliSum jordan_wigner(const FermionHamiltonian& h) { return map_fermionic(h, FermionEncoding::JordanWigner); }

FermionHamiltonian number_operator(std::size_t nso, NumberKind kind) {
  FermionHamiltonian f;
  f.n_spin_orbitals = nso;
  f.one_body = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nso), static_cast<Eigen::Index>(nso));
  f.two_body = Tensor4(nso);
  const std::size_t half = nso / 2;
  for (std::size_t p = 0; p < nso; ++p) {
    const bool alpha = p < half;
    if (kind == NumberKind::Total || (kind == NumberKind::Alpha && alpha) || (kind == NumberKind::Beta && !alpha))
      f.one_body(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)) = 1.0;
  }
  return f;
}

PauliString remove_qubits(const PauliString& p, const std::vector<int>& qubits) {
  std::vector<int> drop = qubits;
  std::sort(drop.begin(), drop.end());
  PauliString out{p.n - static_cast<int>(drop.size()), 0, 0};
  int k = 0;
  for (int q = 0; q < p.n; ++q) {
    if (std::binary_search(drop.begin(), drop.end(), q)) {
      if ((p.x | p.z) & bit(q)) throw DomainError("remove_qubits: qubit is not idle");
      continue;
    }
    if (p.x & bit(q)) out.x |= bit(k);
    if (p.z & bit(q)) out.z |= bit(k);
    ++k;
  }
  return out;
}

PauliSum parity_two_qubit_reduction(const FermionHamiltonian& h, int n_alpha, int n_beta) {
  const int n = static_cast<int>(h.n_spin_orbitals);
  if (n < 2 || n % 2) throw DomainError("parity reduction needs an even, nonzero spin-orbital count");
  if (n_alpha < 0 || n_beta < 0 || n_alpha > n / 2 || n_beta > n / 2)
    throw DomainError("parity reduction: invalid spin occupation");
  const PauliSum full = map_fermionic(h, FermionEncoding::Parity);
  const int qa = n / 2 - 1;
  const int qt = n - 1;
  const double sa = (n_alpha % 2) ? -1.0 : 1.0;
  const double st = ((n_alpha + n_beta) % 2) ? -1.0 : 1.0;
  PauliSum out(n - 2);
  for (const auto& t : full.terms()) {
    PauliString s = t.string;
    if (s.x & (bit(qa) | bit(qt)))
      throw DomainError("symmetry violation: Hamiltonian does not conserve spin-resolved particle number parity");
    double c = t.coeff;
    if (s.z & bit(qa)) c *= sa;
    if (s.z & bit(qt)) c *= st;
    s.z &= ~(bit(qa) | bit(qt));
    out.add(c, remove_qubits(s, {qa, qt}));
  }
  return out.canonicalize();
}

PauliSum parity_two_qubit_reduction(const FermionHamiltonian& h, int n_electrons) {
  return parity_two_qubit_reduction(h, (n_electrons + 1) / 2, n_electrons / 2);
}

namespace {

using Row = std::vector<std::uint8_t>;

// Reduced row-echelon form over GF(2) in place; returns pivot columns.
std::vector<int> rref(std::vector<Row>& m, int cols) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && !m[p][c]) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != r && m[i][c])
        for (int k = 0; k < cols; ++k) m[i][k] ^= m[r][k];
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

}  // namespace

TaperingSpec find_z2_symmetries(const PauliSum& h) {
  const int n = h.n_qubits();
  TaperingSpec spec;
  spec.n_qubits = n;
  if (n == 0) return spec;

  // Unknown v = (gx | gz); term (x, z) commutes iff z.gx + x.gz = 0 mod 2.
  std::vector<Row> check;
  for (const auto& t : h.terms()) {
    if (t.string.is_identity()) continue;
    Row r(2 * n, 0);
    for (int q = 0; q < n; ++q) {
      r[q] = (t.string.z >> q) & 1;
      r[n + q] = (t.string.x >> q) & 1;
    }
    check.push_back(std::move(r));
  }
  const std::vector<int> pivots = rref(check, 2 * n);
  std::vector<bool> is_pivot(2 * n, false);
  for (int c : pivots) is_pivot[c] = true;

  // Kernel basis: one vector per free column.
  std::vector<Row> kernel;
  for (int f = 0; f < 2 * n; ++f) {
    if (is_pivot[f]) continue;
    Row v(2 * n, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < check.size(); ++i)
      if (check[i][f]) v[pivots[i]] = 1;
    kernel.push_back(std::move(v));
  }
  if (kernel.empty()) return spec;

  // Reorder to (gz | gx) so pivots prefer Z-type columns, then reduce.
  std::vector<Row> gens;
  for (const auto& v : kernel) {
    Row g(2 * n, 0);
    for (int q = 0; q < n; ++q) {
      g[q] = v[n + q];
      g[n + q] = v[q];
    }
    gens.push_back(std::move(g));
  }
  const std::vector<int> gpiv = rref(gens, 2 * n);

  std::vector<int> used;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    PauliString g{n, 0, 0};
    for (int q = 0; q < n; ++q) {
      if (gens[i][q]) g.z |= bit(q);
      if (gens[i][n + q]) g.x |= bit(q);
    }
    const int col = gpiv[i];
    const int q = col % n;
    if (std::find(used.begin(), used.end(), q) != used.end())
      throw DomainError("tapering: symmetry generators share a pivot qubit");
    used.push_back(q);
    // z-part pivot: only this generator has Z/Y there, so X_q anticommutes
    // with it alone; x-part pivot generators are X-type only, use Z_q.
    const PauliString sigma = col < n ? PauliString{n, bit(q), 0} : PauliString{n, 0, bit(q)};
    spec.generators.push_back(g);
    spec.pivot_qubits.push_back(q);
    spec.single_qubit_paulis.push_back(sigma);
  }
  spec.sector.assign(spec.generators.size(), 1);
  return spec;
}

PauliSum apply_tapering(const PauliSum& h, const TaperingSpec& spec) {
  if (spec.empty()) return h.canonicalized();
  if (h.n_qubits() != spec.n_qubits) throw DomainError("tapering: qubit count mismatch");
  if (spec.sector.size() != spec.generators.size()) throw DomainError("tapering: sector length mismatch");
  const int n = spec.n_qubits;
  const double r2 = 1.0 / std::sqrt(2.0);
  PauliSum cur = h.canonicalized();
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    PauliSum u(n);
    u.add(r2, spec.single_qubit_paulis[i]);
    u.add(r2, spec.generators[i]);
    cur = sandwich(u, cur);
  }
  PauliSum out(n - static_cast<int>(spec.generators.size()));
  for (const auto& t : cur.terms()) {
    PauliString s = t.string;
    double c = t.coeff;
    for (std::size_t i = 0; i < spec.generators.size(); ++i) {
      const int q = spec.pivot_qubits[i];
      const PauliString& sig = spec.single_qubit_paulis[i];
      const std::uint64_t xq = s.x & bit(q), zq = s.z & bit(q);
      if (!xq && !zq) continue;
      if (xq != (sig.x & bit(q)) || zq != (sig.z & bit(q)))
        throw NumericalError("tapering: rotated operator does not commute with a symmetry");
      if (spec.sector[i] != 1 && spec.sector[i] != -1) throw DomainError("tapering: sector values must be +1 or -1");
      c *= spec.sector[i];
      s.x &= ~bit(q);
      s.z &= ~bit(q);
    }
    out.add(c, remove_qubits(s, spec.pivot_qubits));
  }
  return out.canonicalize();
}

TaperResult find_z2_and_taper(const PauliSum& h, std::optional<std::vector<int>> sector,
                              std::optional<double> target_energy) {
  TaperResult res;
  res.spec = find_z2_symmetries(h);
  if (res.spec.empty()) {
    res.hamiltonian = h.canonicalized();
    return res;
  }
  if (sector) {
    if (sector->size() != res.spec.generators.size())
      throw DomainError("tapering: sector has " + std::to_string(sector->size()) + " entries, expected " +
                        std::to_string(res.spec.generators.size()));
    res.spec.sector = *sector;
    res.hamiltonian = apply_tapering(h, res.spec);
    return res;
  }
  const double target = target_energy ? *target_energy : exact_diagonalize(h).energy;
  const std::size_t k = res.spec.generators.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    TaperingSpec trial = res.spec;
    for (std::size_t i = 0; i < k; ++i) trial.sector[i] = ((mask >> i) & 1) ? -1 : 1;
    PauliSum tapered = apply_tapering(h, trial);
    const double e = exact_diagonalize(tapered).energy;
    // Strictly better only, so ties keep the earlier (more +1) sector.
    if (std::abs(e - target) < best - 1e-12) {
      best = std::abs(e - target);
      res.spec = trial;
      res.hamiltonian = std::move(tapered);
    }
  }
  return res;
}

}  // namespace qmd
