#include "qmd/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "qmd/error.hpp"

namespace qmd {

Histogram histogram(const std::vector<double>& x, int bins, double fallback_width) {
  if (x.empty()) throw DomainError("histogram: no data");
  if (bins < 1) throw ConfigError("histogram: bins must be positive");
  const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
  Histogram h;
  if (*mx - *mn <= 0.0) {
    h.lo = *mn - 0.5 * fallback_width;
    h.width = fallback_width;
    h.counts.assign(1, static_cast<double>(x.size()));
  } else {
    h.lo = *mn;
    h.width = (*mx - *mn) / bins;
    h.counts.assign(static_cast<std::size_t>(bins), 0.0);
    for (double v : x) {
      auto k = static_cast<std::size_t>((v - h.lo) / h.width);
      h.counts[std::min(k, h.counts.size() - 1)] += 1.0;
    }
  }
  h.density.resize(h.counts.size());
  const double norm = static_cast<double>(x.size()) * h.width;
  for (std::size_t i = 0; i < h.counts.size(); ++i) h.density[i] = h.counts[i] / norm;
  return h;
}

int count_modes(const Histogram& h, double min_prominence) {
  const std::size_t n = h.counts.size();
  if (n < 3) return n == 0 ? 0 : 1;
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double l = i > 0 ? h.counts[i - 1] : h.counts[i];
    const double r = i + 1 < n ? h.counts[i + 1] : h.counts[i];
    s[i] = (l + 2.0 * h.counts[i] + r) / 4.0;
  }
  const double top = *std::max_element(s.begin(), s.end());
  if (top <= 0.0) return 0;
  int modes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || s[i] > s[i - 1];
    const bool right_ok = i + 1 == n || s[i] >= s[i + 1];
    if (!left_ok || !right_ok) continue;
    // Prominence: descend each side until a higher point, keep the minima.
    double lmin = s[i];
    bool lhigher = false;
    for (std::size_t j = i; j-- > 0;) {
      if (s[j] > s[i]) {
        lhigher = true;
        break;
      }
      lmin = std::min(lmin, s[j]);
    }
    double rmin = s[i];
    bool rhigher = false;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s[j] > s[i]) {
        rhigher = true;
        break;
      }
      rmin = std::min(rmin, s[j]);
    }
    double base;
    if (lhigher && rhigher) base = std::max(lmin, rmin);
    else if (lhigher) base = lmin;
    else if (rhigher) base = rmin;
    else base = std::min(lmin, rmin);
    // Global maximum: prominence is its full height.
    if (!lhigher && !rhigher) base = 0.0;
    if (s[i] - base >= min_prominence * top) ++modes;
  }
  return modes;
}

GaussianFit fit_gaussian(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) throw DomainError("gaussian fit: need at least 3 points");
  const std::size_t n = x.size();
  // Moment-based start.
  double sw = 0.0, sx = 0.0, sxx = 0.0, ymax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = std::max(y[i], 0.0);
    sw += w;
    sx += w * x[i];
    sxx += w * x[i] * x[i];
    ymax = std::max(ymax, y[i]);
  }
  if (sw <= 0.0) throw DomainError("gaussian fit: no positive data");
  const double mean = sx / sw;
  const double var = std::max(sxx / sw - mean * mean, 1e-12);
  Eigen::Vector3d p(ymax, mean, 1.0 / (2.0 * var));

  auto residuals = [&](const Eigen::Vector3d& q, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    r.resize(static_cast<Eigen::Index>(n));
    if (jac) jac->resize(static_cast<Eigen::Index>(n), 3);
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = x[i] - q[1];
      const double e = std::exp(-q[2] * dx * dx);
      const auto k = static_cast<Eigen::Index>(i);
      r[k] = q[0] * e - y[i];
      if (jac) {
        (*jac)(k, 0) = e;
        (*jac)(k, 1) = q[0] * e * 2.0 * q[2] * dx;
        (*jac)(k, 2) = -q[0] * e * dx * dx;
      }
    }
  };

  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  residuals(p, r, &J);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  GaussianFit fit;
  for (int it = 0; it < 200; ++it) {
    fit.iterations = it + 1;
    const Eigen::Matrix3d JtJ = J.transpose() * J;
    const Eigen::Vector3d g = J.transpose() * r;
    Eigen::Matrix3d A = JtJ;
    A.diagonal() += lambda * JtJ.diagonal().cwiseMax(1e-300);
    const Eigen::Vector3d step = A.ldlt().solve(-g);
    Eigen::Vector3d trial = p + step;
    if (trial[2] <= 0.0) trial[2] = 0.5 * p[2];
    Eigen::VectorXd rt;
    residuals(trial, rt, nullptr);
    const double ct = rt.squaredNorm();
    if (ct < cost) {
      const double rel = (cost - ct) / std::max(cost, 1e-300);
      p = trial;
      cost = ct;
      residuals(p, r, &J);
      lambda = std::max(lambda * 0.3, 1e-12);
      if (rel < 1e-12 || step.norm() < 1e-14 * (1.0 + p.norm())) break;
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }
  fit.a = p[0];
  fit.b = p[1];
  fit.c = p[2];
  fit.residual = cost;
  if (n > 3) {
    const Eigen::Matrix3d JtJ = J.transpose() * J;
    const Eigen::Matrix3d cov = JtJ.inverse() * (cost / static_cast<double>(n - 3));
    fit.sigma_b = std::sqrt(std::max(cov(1, 1), 0.0));
    fit.sigma_c = std::sqrt(std::max(cov(2, 2), 0.0));
  }
  return fit;
}

BlockingResult blocking_error(const std::vector<double>& x, std::size_t min_blocks) {
  if (x.size() < 2) throw DomainError("blocking: need at least two samples");
  BlockingResult res;
  res.mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  std::vector<double> level = x;
  while (level.size() >= std::max<std::size_t>(min_blocks, 2)) {
    const double n = static_cast<double>(level.size());
    const double m = std::accumulate(level.begin(), level.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : level) ss += (v - m) * (v - m);
    const double err = std::sqrt(ss / (n - 1.0) / n);
    res.level_errors.push_back(err);
    res.error = std::max(res.error, err);
    std::vector<double> next(level.size() / 2);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = 0.5 * (level[2 * i] + level[2 * i + 1]);
    level.swap(next);
  }
  if (res.level_errors.empty()) {
    // Too short for blocking: fall back to the naive error.
    const double n = static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - res.mean) * (v - res.mean);
    res.error = std::sqrt(ss / (n - 1.0) / n);
    res.level_errors.push_back(res.error);
  }
  return res;
}

double linear_drift(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 2) throw DomainError("drift: need at least two points");
  const double n = static_cast<double>(t.size());
  const double mt = std::accumulate(t.begin(), t.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    sty += (t[i] - mt) * (y[i] - my);
  }
  if (stt <= 0.0) return 0.0;
  return std::abs(sty / stt) * (t.back() - t.front());
}

std::optional<double> oscillation_period(const std::vector<double>& t, const std::vector<double>& y,
                                         double hysteresis) {
  if (t.size() != y.size() || t.size() < 5) return std::nullopt;
  const double n = static_cast<double>(y.size());
  const double m = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : y) ss += (v - m) * (v - m);
  const double sd = std::sqrt(ss / n);
  if (sd <= 0.0) return std::nullopt;
  const double up = m + hysteresis * sd;
  const double down = m - hysteresis * sd;

  std::vector<double> peaks;
  bool inside = false;
  std::size_t best = 0;
  bool seen_low = false;  // skip a segment already in progress at t0
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!inside) {
      if (y[i] < down) seen_low = true;
      if (y[i] > up && seen_low) {
        inside = true;
        best = i;
      }
    } else {
      if (y[i] > y[best]) best = i;
      if (y[i] < down) {
        inside = false;
        double tp = t[best];
        if (best > 0 && best + 1 < y.size()) {
          const double y0 = y[best - 1], y1 = y[best], y2 = y[best + 1];
          const double den = y0 - 2.0 * y1 + y2;
          if (den < 0.0) tp += 0.5 * (y0 - y2) / den * (t[best + 1] - t[best]);
        }
        peaks.push_back(tp);
      }
    }
  }
  if (peaks.size() < 2) return std::nullopt;
  return (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
}

std::vector<double> bond_series(const Trajectory& traj, std::size_t i, std::size_t j) {
  std::vector<double> r;
  r.reserve(traj.frames.size());
  for (const auto& f : traj.frames) {
    const Eigen::Vector3d d = f.positions.segment<3>(3 * static_cast<Eigen::Index>(i)) -
                              f.positions.segment<3>(3 * static_cast<Eigen::Index>(j));
    r.push_back(d.norm());
  }
  return r;
}

TrajectoryReport analyze_trajectory(const Trajectory& traj, double equilibration_fs, int bins,
                                    std::size_t min_frames) {
  if (traj.frames.size() < min_frames)
    throw DomainError("analyze: trajectory has " + std::to_string(traj.frames.size()) + " frames, need " +
                      std::to_string(min_frames));
  TrajectoryReport rep;
  rep.frames = traj.frames.size();
  rep.duration_fs = traj.frames.back().t_fs - traj.frames.front().t_fs;

  std::vector<double> t, temp, etot, ekin;
  Trajectory kept;
  kept.masses = traj.masses;
  for (const auto& f : traj.frames) {
    if (f.t_fs + 1e-9 < equilibration_fs) continue;
    kept.frames.push_back(f);
    t.push_back(f.t_fs);
    temp.push_back(f.temperature_k);
    etot.push_back(f.e_tot);
    ekin.push_back(f.e_kin);
  }
  rep.frames_used = kept.frames.size();
  if (rep.frames_used < 2) throw DomainError("analyze: equilibration window leaves fewer than two frames");
  rep.temperature = blocking_error(temp);
  rep.e_tot_drift = linear_drift(t, etot);
  rep.e_tot_end_change = etot.back() - etot.front();
  rep.e_kin_period_fs = oscillation_period(t, ekin);

  if (traj.masses.size() >= 2) {
    const auto r = bond_series(kept, 0, 1);
    rep.bond_mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
    rep.bond_histogram = histogram(r, bins);
    rep.bond_modes = count_modes(rep.bond_histogram);
    if (rep.bond_histogram.counts.size() >= 4) {
      std::vector<double> xs, ys;
      for (std::size_t k = 0; k < rep.bond_histogram.counts.size(); ++k) {
        xs.push_back(rep.bond_histogram.center(k));
        ys.push_back(rep.bond_histogram.density[k]);
      }
      try {
        rep.bond_fit = fit_gaussian(xs, ys);
      } catch (const Error&) {
        rep.bond_fit.reset();
      }
    }
  }
  return rep;
}

}  // namespace qmd
