#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmd/md.hpp"

namespace qmd {

struct Histogram {
  double lo = 0.0;
  double width = 0.0;
  std::vector<double> counts;
  std::vector<double> density;  // normalized to unit area

  double center(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * width; }
};

/// Histogram over [min, max] of the data; a constant series lands in one
/// bin of width `fallback_width` centered on the value.
Histogram histogram(const std::vector<double>& x, int bins, double fallback_width = 1e-3);

/// Number of peaks of the 3-point smoothed histogram whose prominence
/// exceeds `min_prominence` times the tallest bin.
int count_modes(const Histogram& h, double min_prominence = 0.25);

struct GaussianFit {
  double a = 0.0;  // amplitude
  double b = 0.0;  // center
  double c = 0.0;  // a exp(-c (x-b)^2)
  double sigma_b = 0.0;
  double sigma_c = 0.0;
  double residual = 0.0;
  int iterations = 0;
  /// beta = 2c/k for a harmonic potential with curvature k.
  double beta(double curvature) const { return 2.0 * c / curvature; }
};

/// Levenberg-Marquardt fit of a exp(-c (x-b)^2) to (x, y).
GaussianFit fit_gaussian(const std::vector<double>& x, const std::vector<double>& y);

struct BlockingResult {
  double mean = 0.0;
  double error = 0.0;
  std::vector<double> level_errors;  // per doubling of block size
};

/// Block averaging: naive standard error of the mean of blocks of size
/// 2^l; the error is the largest value among levels with at least
/// `min_blocks` blocks.
BlockingResult blocking_error(const std::vector<double>& x, std::size_t min_blocks = 32);

/// |slope| x duration of a least-squares line through (t, y).
double linear_drift(const std::vector<double>& t, const std::vector<double>& y);

/// Mean spacing of the maxima of an oscillating series. Segments start
/// when the series rises above mean + h and end when it falls below
/// mean - h (h = hysteresis x std); each peak is refined with a parabola.
/// Returns nullopt with fewer than two peaks.
std::optional<double> oscillation_period(const std::vector<double>& t, const std::vector<double>& y,
                                         double hysteresis = 0.25);

/// Bond length between atoms i and j for every frame.
std::vector<double> bond_series(const Trajectory& traj, std::size_t i, std::size_t j);

struct TrajectoryReport {
  std::size_t frames = 0;
  std::size_t frames_used = 0;  // after the equilibration cut
  double duration_fs = 0.0;
  BlockingResult temperature;
  double e_tot_drift = 0.0;       // linear-fit drift over the run
  double e_tot_end_change = 0.0;  // E_tot(end) - E_tot(start)
  std::optional<double> e_kin_period_fs;
  Histogram bond_histogram;
  int bond_modes = 0;
  std::optional<GaussianFit> bond_fit;
  double bond_mean = 0.0;
};

/// Statistics over frames with t >= equilibration_fs. Bond quantities use
/// atoms 0 and 1. Throws DomainError below `min_frames` frames.
TrajectoryReport analyze_trajectory(const Trajectory& traj, double equilibration_fs = 0.0, int bins = 30,
                                    std::size_t min_frames = 100);

}  // namespace qmd
