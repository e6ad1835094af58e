#include "qmd/molecule.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "qmd/error.hpp"
#include "qmd/units.hpp"

namespace qmd {

Molecule::Molecule(std::vector<Atom> atoms, int charge, std::string label)
    : atoms_(std::move(atoms)), charge_(charge), label_(std::move(label)) {}

int Molecule::n_electrons() const {
  int z = 0;
  for (const auto& a : atoms_) z += a.atomic_number;
  return z - charge_;
}

Eigen::VectorXd Molecule::coordinates() const {
  Eigen::VectorXd xyz(3 * atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) xyz.segment<3>(3 * i) = atoms_[i].position;
  return xyz;
}

Molecule Molecule::with_coordinates(const Eigen::VectorXd& xyz) const {
  if (static_cast<std::size_t>(xyz.size()) != 3 * atoms_.size())
    throw DomainError("coordinate vector length does not match atom count");
  Molecule out = *this;
  for (std::size_t i = 0; i < atoms_.size(); ++i) out.atoms_[i].position = xyz.segment<3>(3 * i);
  return out;
}

Molecule Molecule::displaced(std::size_t atom, int axis, double delta_angstrom) const {
  Molecule out = *this;
  out.atoms_.at(atom).position[axis] += delta_angstrom;
  return out;
}

double Molecule::distance(std::size_t i, std::size_t j) const {
  return (atoms_.at(i).position - atoms_.at(j).position).norm();
}

double Molecule::angle_deg(std::size_t i, std::size_t j, std::size_t k) const {
  const Eigen::Vector3d a = atoms_.at(i).position - atoms_.at(j).position;
  const Eigen::Vector3d b = atoms_.at(k).position - atoms_.at(j).position;
  const double c = std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0);
  return std::acos(c) * 180.0 / units::kPi;
}

void Molecule::validate() const {
  if (atoms_.empty()) throw DomainError("molecule has no atoms");
  for (const auto& a : atoms_) {
    if (a.atomic_number != 1) throw DomainError("only hydrogen atoms are supported");
    if (!a.position.allFinite()) throw DomainError("non-finite atomic position");
  }
  const int ne = n_electrons();
  if (ne <= 0) throw DomainError("electron count must be positive");
  if (ne % 2 != 0) throw DomainError("electron count must be even (closed shell)");
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    for (std::size_t j = i + 1; j < atoms_.size(); ++j)
      if (distance(i, j) < 1e-6)
        throw DomainError("atoms " + std::to_string(i) + " and " + std::to_string(j) +
                          " are closer than 1e-6 angstrom");
}

Molecule make_h2(double bond_angstrom) {
  return Molecule({{1, {0.0, 0.0, 0.0}}, {1, {0.0, 0.0, bond_angstrom}}}, 0, "H2");
}

Molecule make_h3plus(double r01, double r02, double angle_deg) {
  const double a = angle_deg * units::kPi / 180.0;
  return Molecule({{1, {0.0, 0.0, 0.0}},
                   {1, {r01, 0.0, 0.0}},
                   {1, {r02 * std::cos(a), r02 * std::sin(a), 0.0}}},
                  1, "H3+");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Molecule parse_xyz(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("xyz: empty input");
  std::size_t count = 0;
  try {
    count = std::stoul(trim(line));
  } catch (const std::exception&) {
    throw ConfigError("xyz: first line must be the atom count");
  }
  if (!std::getline(in, line)) throw ConfigError("xyz: missing comment line");
  int charge = 0;
  std::string label;
  {
    std::istringstream cl(trim(line));
    std::string tok;
    while (cl >> tok) {
      if (tok.rfind("charge=", 0) == 0) {
        try {
          charge = std::stoi(tok.substr(7));
        } catch (const std::exception&) {
          throw ConfigError("xyz: malformed charge field '" + tok + "'");
        }
      } else {
        label += (label.empty() ? "" : " ") + tok;
      }
    }
  }
  std::vector<Atom> atoms;
  while (atoms.size() < count && std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream al(line);
    std::string sym;
    double x, y, z;
    if (!(al >> sym >> x >> y >> z)) throw ConfigError("xyz: malformed atom line '" + line + "'");
    if (sym != "H" && sym != "h" && sym != "1") throw ConfigError("xyz: unsupported element '" + sym + "'");
    atoms.push_back({1, {x, y, z}});
  }
  if (atoms.size() != count) throw ConfigError("xyz: fewer atom lines than declared");
  Molecule mol(std::move(atoms), charge, label);
  mol.validate();
  return mol;
}

Molecule read_xyz(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open molecule file " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_xyz(ss.str());
}

std::string format_xyz(const Molecule& mol, const std::string& comment) {
  std::ostringstream out;
  out << mol.size() << '\n';
  out << "charge=" << mol.charge();
  if (!comment.empty()) out << ' ' << comment;
  else if (!mol.label().empty()) out << ' ' << mol.label();
  out << '\n' << std::setprecision(10) << std::fixed;
  for (const auto& a : mol.atoms())
    out << "H " << a.position.x() << ' ' << a.position.y() << ' ' << a.position.z() << '\n';
  return out.str();
}

}  // namespace qmd
