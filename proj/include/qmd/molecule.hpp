#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <string>
#include <vector>

namespace qmd {

struct Atom {
  int atomic_number = 1;
  Eigen::Vector3d position;  // angstrom
};

/// Nuclear configuration of a hydrogen-only molecule.
class Molecule {
 public:
  Molecule() = default;
  Molecule(std::vector<Atom> atoms, int charge, std::string label = {});

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  int charge() const { return charge_; }
  const std::string& label() const { return label_; }
  int n_electrons() const;

  /// Flattened 3N coordinate vector in angstrom (x0 y0 z0 x1 ...).
  Eigen::VectorXd coordinates() const;
  Molecule with_coordinates(const Eigen::VectorXd& xyz) const;
  Molecule displaced(std::size_t atom, int axis, double delta_angstrom) const;

  double distance(std::size_t i, std::size_t j) const;
  /// Angle i-j-k in degrees, vertex at j.
  double angle_deg(std::size_t i, std::size_t j, std::size_t k) const;

  /// Checks the hydrogen-only, closed-shell and minimum-separation invariants.
  void validate() const;

 private:
  std::vector<Atom> atoms_;
  int charge_ = 0;
  std::string label_;
};

Molecule make_h2(double bond_angstrom);
/// H3+ with atom 0 at the apex: |R01| = r01, |R02| = r02, angle 1-0-2 in degrees.
Molecule make_h3plus(double r01, double r02, double angle_deg);

/// XYZ-style text: atom count, "charge=<int> label", then "H x y z" lines.
Molecule parse_xyz(const std::string& text);
Molecule read_xyz(const std::filesystem::path& path);
std::string format_xyz(const Molecule& mol, const std::string& comment = {});

}  // namespace qmd
