#pragma once

#include <functional>
#include <string>
#include <vector>

namespace qmd {

enum class OptimizerMethod { Cobyla, NelderMead };

OptimizerMethod parse_optimizer_method(const std::string& s);

struct OptimizerOptions {
  OptimizerMethod method = OptimizerMethod::Cobyla;
  double rho_begin = 0.5;   // initial trust radius / simplex size (rad)
  double rho_end = 1e-4;    // final trust radius / simplex size (rad)
  int max_evaluations = 500;
  /// Stagnation: no improvement larger than this over `stagnation_window`
  /// evaluations ends the run with a warning. Disabled when window <= 0.
  double stagnation_tol = 1e-8;
  int stagnation_window = 100;
};

struct OptimizerResult {
  std::vector<double> x;  // best point seen
  double fx = 0.0;
  int evaluations = 0;
  std::vector<double> trace;  // f at every evaluation
  bool converged = false;
  std::string warning;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Derivative-free local minimization without constraints.
OptimizerResult minimize(const Objective& f, const std::vector<double>& x0, const OptimizerOptions& opts = {});

/// Linear-model trust-region method in the style of COBYLA: a simplex of
/// n+1 points defines a linear model, steps go to the trust-region
/// boundary along its negative gradient, and the radius is halved when a
/// well-shaped simplex yields no progress.
OptimizerResult minimize_cobyla(const Objective& f, const std::vector<double>& x0, const OptimizerOptions& opts);
OptimizerResult minimize_nelder_mead(const Objective& f, const std::vector<double>& x0, const OptimizerOptions& opts);

}  // namespace qmd
