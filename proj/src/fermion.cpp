#include "qmd/fermion.hpp"

#include "qmd/error.hpp"

namespace qmd {

FermionHamiltonian build_fermionic_hamiltonian(const MOIntegrals& mo, std::size_t n_spin_orbitals) {
  const std::size_t m = mo.n_orbitals();
  if (n_spin_orbitals != 2 * m)
    throw DomainError("build_fermionic_hamiltonian: spin-orbital count must be twice the MO count");
  FermionHamiltonian h;
  h.n_spin_orbitals = n_spin_orbitals;
  h.constant = mo.nuclear_repulsion;
  h.one_body = Eigen::MatrixXd::Zero(n_spin_orbitals, n_spin_orbitals);
  h.two_body = Tensor4(n_spin_orbitals);
  for (std::size_t sigma = 0; sigma < 2; ++sigma)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) h.one_body(i + sigma * m, j + sigma * m) = mo.h(i, j);
  // a+_p a+_q a_r a_s with p,s sharing one electron and q,r the other.
  for (std::size_t s1 = 0; s1 < 2; ++s1)
    for (std::size_t s2 = 0; s2 < 2; ++s2)
      for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q)
          for (std::size_t r = 0; r < m; ++r)
            for (std::size_t s = 0; s < m; ++s)
              h.two_body(p + s1 * m, q + s2 * m, r + s2 * m, s + s1 * m) = mo.g(p, q, r, s);
  return h;
}

PauliSum build_hcb_hamiltonian(const MOIntegrals& mo, int n_electrons) {
  if (n_electrons <= 0 || n_electrons % 2 != 0)
    throw DomainError("hard-core boson Hamiltonian requires a closed-shell (even) electron count");
  const int n = static_cast<int>(mo.n_orbitals());
  if (n_electrons > 2 * n) throw DomainError("hard-core boson Hamiltonian: too many electrons");
  auto word = [n](std::initializer_list<std::pair<int, char>> ops) {
    PauliString p = PauliString::identity(n);
    for (auto [q, c] : ops) {
      if (c == 'X' || c == 'Y') p.x |= 1ULL << q;
      if (c == 'Z' || c == 'Y') p.z |= 1ULL << q;
    }
    return p;
  };
  PauliSum out(n);
  out.add(mo.nuclear_repulsion, PauliString::identity(n));
  for (int r = 0; r < n; ++r) {
    const double hrr = 2.0 * mo.h(r, r) + mo.g(r, r, r, r);
    out.add(0.5 * hrr, PauliString::identity(n));
    out.add(-0.5 * hrr, word({{r, 'Z'}}));
  }
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      if (r == s) continue;
      const double hrs = mo.g(r, r, s, s);
      const double grs = 2.0 * mo.g(r, s, s, r) - mo.g(r, s, r, s);
      out.add(0.25 * hrs, word({{r, 'X'}, {s, 'X'}}));
      out.add(0.25 * hrs, word({{r, 'Y'}, {s, 'Y'}}));
      out.add(0.25 * grs, PauliString::identity(n));
      out.add(-0.25 * grs, word({{r, 'Z'}}));
      out.add(-0.25 * grs, word({{s, 'Z'}}));
      out.add(0.25 * grs, word({{r, 'Z'}, {s, 'Z'}}));
    }
  return out.canonicalize();
}

}  // namespace qmd
