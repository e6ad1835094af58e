#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qmd/md.hpp"
#include "qmd/molecule.hpp"

namespace qmd {

struct GeomOptSettings {
  double initial_step = 0.2;  // angstrom^2 / Ha: displacement = step * force
  double max_step = 0.4;
  double min_step = 1e-4;
  double grow = 1.2;
  double shrink = 0.5;
  double force_tol = 5e-4;  // Ha/angstrom, max component
  int max_iterations = 500;
  /// Noisy forces: no energy comparisons; convergence from a moving
  /// average of internal coordinates.
  bool noisy = false;
  int window = 10;
  double bond_precision = 1e-3;   // angstrom
  double angle_precision = 0.1;   // degrees
};

/// Bond lengths of all pairs (i < j, angstrom), then for three atoms the
/// angle 1-0-2 in degrees.
std::vector<double> internal_coordinates(const Molecule& mol);
std::vector<std::string> internal_coordinate_names(const Molecule& mol);

struct GeomOptIteration {
  int iteration = 0;
  double energy = 0.0;
  double max_force = 0.0;
  double step = 0.0;
  bool accepted = true;
  std::vector<double> internal;
};

struct GeomOptReport {
  Molecule geometry;
  std::vector<double> internal;  // moving average in noisy mode
  int iterations = 0;
  int force_evaluations = 0;
  bool converged = false;
  std::vector<GeomOptIteration> history;
};

using GeometryForces = std::function<ForceSample(const Molecule&)>;

/// Steepest descent with an adaptive step. Exact mode accepts a step only
/// if the energy drops (step x grow) and otherwise retries with step x
/// shrink; noisy mode always moves and adapts the step by the sign of
/// consecutive force projections.
GeomOptReport geometry_optimize(const Molecule& start, const GeometryForces& forces, const GeomOptSettings& s = {});

}  // namespace qmd
