#include "qmd/geomopt.hpp"

#include <algorithm>
#include <cmath>

#include "qmd/error.hpp"

namespace qmd {

std::vector<double> internal_coordinates(const Molecule& mol) {
  std::vector<double> c;
  for (std::size_t i = 0; i < mol.size(); ++i)
    for (std::size_t j = i + 1; j < mol.size(); ++j) c.push_back(mol.distance(i, j));
  if (mol.size() == 3) c.push_back(mol.angle_deg(1, 0, 2));
  return c;
}

std::vector<std::string> internal_coordinate_names(const Molecule& mol) {
  std::vector<std::string> c;
  for (std::size_t i = 0; i < mol.size(); ++i)
    for (std::size_t j = i + 1; j < mol.size(); ++j) c.push_back("r" + std::to_string(i) + std::to_string(j));
  if (mol.size() == 3) c.push_back("angle102");
  return c;
}

namespace {

bool is_angle(const Molecule& mol, std::size_t k) { return mol.size() == 3 && k == 3; }

std::vector<double> window_mean(const std::vector<GeomOptIteration>& h, std::size_t end, int w) {
  std::vector<double> m(h[end - 1].internal.size(), 0.0);
  for (std::size_t i = end - static_cast<std::size_t>(w); i < end; ++i)
    for (std::size_t k = 0; k < m.size(); ++k) m[k] += h[i].internal[k] / w;
  return m;
}

}  // namespace

GeomOptReport geometry_optimize(const Molecule& start, const GeometryForces& forces, const GeomOptSettings& s) {
  if (!(s.initial_step > 0.0) || s.max_iterations < 1 || s.window < 1)
    throw ConfigError("geometry optimization: invalid settings");
  GeomOptReport rep;
  Molecule cur = start;
  ForceSample fs = forces(cur);
  ++rep.force_evaluations;
  double step = s.initial_step;
  Eigen::VectorXd prev_force;

  auto record = [&](int it, bool accepted) {
    GeomOptIteration r;
    r.iteration = it;
    r.energy = fs.energy;
    r.max_force = fs.forces.cwiseAbs().maxCoeff();
    r.step = step;
    r.accepted = accepted;
    r.internal = internal_coordinates(cur);
    rep.history.push_back(r);
  };
  record(0, true);

  for (int it = 1; it <= s.max_iterations; ++it) {
    rep.iterations = it - 1;
    if (!s.noisy && fs.forces.cwiseAbs().maxCoeff() < s.force_tol) {
      rep.converged = true;
      break;
    }
    const Molecule trial = cur.with_coordinates(cur.coordinates() + step * fs.forces);
    ForceSample ft = forces(trial);
    ++rep.force_evaluations;
    if (!s.noisy) {
      if (ft.energy < fs.energy) {
        cur = trial;
        fs = std::move(ft);
        step = std::min(step * s.grow, s.max_step);
        record(it, true);
      } else {
        step *= s.shrink;
        record(it, false);
        if (step < s.min_step) {
          // No downhill step at any useful length: stationary to within noise.
          rep.converged = fs.forces.cwiseAbs().maxCoeff() < s.force_tol;
          rep.iterations = it;
          break;
        }
      }
    } else {
      const double proj = ft.forces.dot(fs.forces);
      cur = trial;
      fs = std::move(ft);
      step = std::clamp(proj > 0.0 ? step * s.grow : step * s.shrink, s.min_step, s.max_step);
      record(it, true);
      const std::size_t nh = rep.history.size();
      if (nh >= static_cast<std::size_t>(2 * s.window + 1)) {
        const auto now = window_mean(rep.history, nh, s.window);
        const auto before = window_mean(rep.history, nh - static_cast<std::size_t>(s.window), s.window);
        bool stable = true;
        for (std::size_t k = 0; k < now.size(); ++k) {
          const double tol = is_angle(cur, k) ? s.angle_precision : s.bond_precision;
          stable = stable && std::abs(now[k] - before[k]) < tol;
        }
        if (stable) {
          rep.converged = true;
          rep.iterations = it;
          break;
        }
      }
    }
    rep.iterations = it;
  }
  rep.geometry = cur;
  if (s.noisy && rep.history.size() >= static_cast<std::size_t>(s.window))
    rep.internal = window_mean(rep.history, rep.history.size(), s.window);
  else
    rep.internal = internal_coordinates(cur);
  return rep;
}

}  // namespace qmd
