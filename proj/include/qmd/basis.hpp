#pragma once

#include <filesystem>
#include <vector>

#include "qmd/molecule.hpp"

namespace qmd {

/// Contracted s-type Gaussian on one nucleus. Coefficients refer to
/// normalized primitives; exponents are in bohr^-2.
struct BasisShell {
  std::size_t center = 0;
  std::vector<double> exponents;
  std::vector<double> coefficients;
};

struct ElementBasis {
  std::vector<double> exponents;
  std::vector<double> coefficients;
};

/// STO-3G hydrogen (zeta = 1.24) as shipped in data/sto-3g.json.
ElementBasis sto3g_hydrogen();

/// Reads {"H": {"exponents": [...], "coefficients": [...]}}.
ElementBasis load_hydrogen_basis(const std::filesystem::path& path);

std::vector<BasisShell> build_basis(const Molecule& mol, const ElementBasis& element);

}  // namespace qmd
