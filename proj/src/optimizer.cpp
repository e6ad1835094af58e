#include "qmd/optimizer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qmd/error.hpp"

namespace qmd {

OptimizerMethod parse_optimizer_method(const std::string& s) {
  if (s == "cobyla") return OptimizerMethod::Cobyla;
  if (s == "nelder-mead") return OptimizerMethod::NelderMead;
  throw ConfigError("unknown optimizer '" + s + "' (expected cobyla or nelder-mead)");
}

namespace {

struct Budget {
  class Exhausted {};

  const Objective& f;
  const OptimizerOptions& opts;
  OptimizerResult& res;
  double last_improvement_value = std::numeric_limits<double>::infinity();
  int last_improvement_eval = 0;
  bool stagnated = false;

  double operator()(const Eigen::VectorXd& x) {
    if (res.evaluations >= opts.max_evaluations || stagnated) throw Exhausted{};
    std::vector<double> v(x.data(), x.data() + x.size());
    const double y = f(v);
    if (!std::isfinite(y)) throw NumericalError("objective returned a non-finite value");
    ++res.evaluations;
    res.trace.push_back(y);
    if (res.x.empty() || y < res.fx) {
      res.x = v;
      res.fx = y;
    }
    if (y < last_improvement_value - opts.stagnation_tol) {
      last_improvement_value = y;
      last_improvement_eval = res.evaluations;
    } else if (opts.stagnation_window > 0 && res.evaluations - last_improvement_eval >= opts.stagnation_window) {
      stagnated = true;
    }
    return y;
  }
};

void check_inputs(const std::vector<double>& x0, const OptimizerOptions& o) {
  if (x0.empty()) throw DomainError("optimizer: empty parameter vector");
  for (double v : x0)
    if (!std::isfinite(v)) throw DomainError("optimizer: non-finite initial parameter");
  if (!(o.rho_begin > 0.0 && o.rho_end > 0.0 && o.rho_end <= o.rho_begin))
    throw ConfigError("optimizer: need 0 < rho_end <= rho_begin");
  if (o.max_evaluations < static_cast<int>(x0.size()) + 1)
    throw ConfigError("optimizer: max_evaluations below n + 1");
}

void finish(OptimizerResult& res, const Budget& b, bool reached_tolerance) {
  if (reached_tolerance) {
    res.converged = true;
  } else if (b.stagnated) {
    res.converged = true;
    res.warning = "stagnation: no improvement over the last " + std::to_string(b.opts.stagnation_window) +
                  " evaluations";
  } else {
    res.converged = false;
    res.warning = "evaluation budget of " + std::to_string(b.opts.max_evaluations) + " exhausted";
  }
}

}  // namespace

OptimizerResult minimize_cobyla(const Objective& f, const std::vector<double>& x0v, const OptimizerOptions& opts) {
  check_inputs(x0v, opts);
  OptimizerResult res;
  Budget eval{f, opts, res};
  const int n = static_cast<int>(x0v.size());
  double rho = opts.rho_begin;

  std::vector<Eigen::VectorXd> pts;
  std::vector<double> vals;
  bool done = false;
  try {
    const Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(x0v.data(), n);
    pts.push_back(x0);
    vals.push_back(eval(x0));
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd p = x0;
      p[i] += rho;
      pts.push_back(p);
      vals.push_back(eval(p));
    }

    while (true) {
      const int best = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
      const Eigen::VectorXd& xb = pts[best];

      Eigen::MatrixXd d(n, n);
      Eigen::VectorXd df(n);
      std::vector<int> others;
      for (int i = 0, r = 0; i <= n; ++i) {
        if (i == best) continue;
        d.row(r) = (pts[i] - xb).transpose();
        df[r] = vals[i] - vals[best];
        others.push_back(i);
        ++r;
      }

      // Geometry: vertices must lie within 2 rho and span all directions.
      int far = -1;
      double far_dist = 0.0;
      for (int r = 0; r < n; ++r) {
        const double dist = d.row(r).norm();
        if (dist > 2.0 * rho && dist > far_dist) {
          far = r;
          far_dist = dist;
        }
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(d / rho, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const double smin = svd.singularValues()[n - 1];
      if (far >= 0 || smin < 0.25) {
        int replace = far;
        Eigen::VectorXd dir = svd.matrixV().col(n - 1);
        if (replace < 0) {
          // Row with the largest component along the degenerate direction.
          Eigen::VectorXd u = svd.matrixU().col(n - 1).cwiseAbs();
          u.maxCoeff(&replace);
        }
        // Keep the direction orthogonal to the remaining edges.
        Eigen::MatrixXd rest(n - 1, n);
        for (int r = 0, k = 0; r < n; ++r)
          if (r != replace) rest.row(k++) = d.row(r);
        if (n > 1) {
          Eigen::JacobiSVD<Eigen::MatrixXd> s2(rest, Eigen::ComputeFullV);
          dir = s2.matrixV().col(n - 1);
        } else {
          dir = Eigen::VectorXd::Ones(1);
        }
        const int idx = others[replace];
        pts[idx] = xb + rho * dir.normalized();
        vals[idx] = eval(pts[idx]);
        continue;
      }

      const Eigen::VectorXd g = d.colPivHouseholderQr().solve(df);
      const double gn = g.norm();
      bool progress = false;
      if (gn > 0.0 && std::isfinite(gn)) {
        const Eigen::VectorXd trial = xb - rho * g / gn;
        const double ft = eval(trial);
        const double predicted = rho * gn;
        const double actual = vals[best] - ft;
        // Replace the worst vertex; the new point is within rho of xb.
        const int worst = static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin());
        if (ft < vals[worst]) {
          pts[worst] = trial;
          vals[worst] = ft;
        }
        progress = actual > 0.1 * predicted || (actual > 0.0 && predicted == 0.0);
      }
      if (!progress) {
        if (rho <= opts.rho_end) {
          done = true;
          break;
        }
        rho = std::max(0.5 * rho, opts.rho_end);
      }
    }
  } catch (const Budget::Exhausted&) {
  }
  finish(res, eval, done);
  return res;
}

OptimizerResult minimize_nelder_mead(const Objective& f, const std::vector<double>& x0v, const OptimizerOptions& opts) {
  check_inputs(x0v, opts);
  OptimizerResult res;
  Budget eval{f, opts, res};
  const int n = static_cast<int>(x0v.size());
  std::vector<Eigen::VectorXd> s;
  std::vector<double> v;
  bool done = false;
  try {
    const Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(x0v.data(), n);
    s.push_back(x0);
    v.push_back(eval(x0));
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd p = x0;
      p[i] += opts.rho_begin;
      s.push_back(p);
      v.push_back(eval(p));
    }
    std::vector<int> order(n + 1);
    while (true) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int a, int b) { return v[a] < v[b]; });
      double size = 0.0;
      for (int i = 1; i <= n; ++i) size = std::max(size, (s[order[i]] - s[order[0]]).cwiseAbs().maxCoeff());
      if (size < opts.rho_end) {
        done = true;
        break;
      }
      const int hi = order[n], lo = order[0], nh = order[n - 1];
      Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
      for (int i = 0; i <= n; ++i)
        if (i != hi) c += s[i];
      c /= n;
      const Eigen::VectorXd xr = c + (c - s[hi]);
      const double fr = eval(xr);
      if (fr < v[lo]) {
        const Eigen::VectorXd xe = c + 2.0 * (c - s[hi]);
        const double fe = eval(xe);
        if (fe < fr) {
          s[hi] = xe, v[hi] = fe;
        } else {
          s[hi] = xr, v[hi] = fr;
        }
      } else if (fr < v[nh]) {
        s[hi] = xr, v[hi] = fr;
      } else {
        const bool outside = fr < v[hi];
        const Eigen::VectorXd xc = outside ? Eigen::VectorXd(c + 0.5 * (xr - c)) : Eigen::VectorXd(c + 0.5 * (s[hi] - c));
        const double fc = eval(xc);
        if (fc < (outside ? fr : v[hi])) {
          s[hi] = xc, v[hi] = fc;
        } else {
          for (int i = 0; i <= n; ++i) {
            if (i == lo) continue;
            s[i] = s[lo] + 0.5 * (s[i] - s[lo]);
            v[i] = eval(s[i]);
          }
        }
      }
    }
  } catch (const Budget::Exhausted&) {
  }
  finish(res, eval, done);
  return res;
}

OptimizerResult minimize(const Objective& f, const std::vector<double>& x0, const OptimizerOptions& opts) {
  return opts.method == OptimizerMethod::Cobyla ? minimize_cobyla(f, x0, opts) : minimize_nelder_mead(f, x0, opts);
}

}  // namespace qmd
