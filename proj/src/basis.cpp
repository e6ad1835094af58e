#include "qmd/basis.hpp"

#include <fstream>
#include <json.hpp>

#include "qmd/error.hpp"

namespace qmd {

ElementBasis sto3g_hydrogen() {
  return {{3.42525091, 0.62391373, 0.16885540}, {0.15432897, 0.53532814, 0.44463454}};
}

ElementBasis load_hydrogen_basis(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open basis file " + path.string());
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("basis file " + path.string() + ": " + e.what());
  }
  if (!j.contains("H")) throw ConfigError("basis file " + path.string() + " has no entry for H");
  ElementBasis b;
  try {
    b.exponents = j.at("H").at("exponents").get<std::vector<double>>();
    b.coefficients = j.at("H").at("coefficients").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("basis file " + path.string() + ": " + e.what());
  }
  if (b.exponents.size() != 3 || b.coefficients.size() != 3)
    throw ConfigError("basis file " + path.string() + ": STO-3G shells need exactly 3 primitives");
  for (double a : b.exponents)
    if (!(a > 0.0)) throw ConfigError("basis file " + path.string() + ": exponents must be positive");
  return b;
}

std::vector<BasisShell> build_basis(const Molecule& mol, const ElementBasis& element) {
  std::vector<BasisShell> shells;
  shells.reserve(mol.size());
  for (std::size_t i = 0; i < mol.size(); ++i)
    shells.push_back({i, element.exponents, element.coefficients});
  return shells;
}

}  // namespace qmd
