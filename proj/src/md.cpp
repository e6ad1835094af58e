#include "qmd/md.hpp"

#include <cmath>

#include "qmd/error.hpp"
#include "qmd/units.hpp"

namespace qmd {

namespace {

// (Ha/angstrom) / m_e -> angstrom / fs^2
constexpr double kAccel = units::kAngstromPerBohr * units::kAngstromPerBohr * units::kAuTimePerFs *
                          units::kAuTimePerFs;
// m_e (angstrom/fs)^2 -> Ha
constexpr double kKinetic = units::kAngstromPerFsToAu * units::kAngstromPerFsToAu;

void check_sample(const ForceSample& s, Eigen::Index n) {
  if (s.forces.size() != n) throw DomainError("force provider returned the wrong number of components");
  if (!s.forces.allFinite() || !std::isfinite(s.energy)) throw NumericalError("force provider returned non-finite values");
}

TrajectoryFrame make_frame(int step, double dt, const Eigen::VectorXd& r, const Eigen::VectorXd& v,
                           const ForceSample& s, const Eigen::VectorXd& m, int dof) {
  TrajectoryFrame f;
  f.step = step;
  f.t_fs = step * dt;
  f.positions = r;
  f.velocities = v;
  f.forces = s.forces;
  f.force_variance = s.force_variance.size() == r.size() ? s.force_variance : Eigen::VectorXd::Zero(r.size());
  f.e_pot = s.energy;
  f.e_kin = kinetic_energy(v, m);
  f.e_tot = f.e_pot + f.e_kin;
  f.temperature_k = kinetic_temperature(f.e_kin, dof);
  return f;
}

}  // namespace

VerletVariant parse_verlet_variant(const std::string& s) {
  if (s == "standard") return VerletVariant::Standard;
  if (s == "half-force" || s == "paper-eq12") return VerletVariant::HalfForce;
  throw ConfigError("unknown Verlet variant '" + s + "' (expected standard or half-force)");
}

std::string to_string(VerletVariant v) { return v == VerletVariant::Standard ? "standard" : "half-force"; }

void MDConfig::validate(std::size_t n_atoms) const {
  if (!(dt_fs > 0.0)) throw ConfigError("md: dt must be positive");
  if (steps < 0) throw ConfigError("md: steps must be non-negative");
  if (masses.size() != n_atoms) throw ConfigError("md: need one mass per atom");
  for (double m : masses)
    if (!(m > 0.0)) throw ConfigError("md: masses must be positive");
  if (integrator == Integrator::Langevin && !(temperature_k > 0.0))
    throw ConfigError("md: Langevin needs a positive temperature");
  if (external_noise < 0.0) throw ConfigError("md: external noise must be non-negative");
}

Eigen::VectorXd coordinate_masses(const std::vector<double>& atom_masses) {
  Eigen::VectorXd m(static_cast<Eigen::Index>(3 * atom_masses.size()));
  for (std::size_t a = 0; a < atom_masses.size(); ++a) m.segment<3>(static_cast<Eigen::Index>(3 * a)).setConstant(atom_masses[a]);
  return m;
}

Eigen::VectorXd acceleration(const Eigen::VectorXd& forces, const Eigen::VectorXd& masses) {
  if (forces.size() != masses.size()) throw DomainError("force and mass vectors differ in length");
  return kAccel * forces.cwiseQuotient(masses);
}

double kinetic_energy(const Eigen::VectorXd& v, const Eigen::VectorXd& masses) {
  return 0.5 * kKinetic * masses.dot(v.cwiseAbs2());
}

double kinetic_temperature(double e_kin, int dof) {
  if (dof <= 0) return 0.0;
  return 2.0 * e_kin / (dof * units::kBoltzmannHartreePerK);
}

Eigen::VectorXd bootstrap_verlet(const Eigen::VectorXd& r0, const Eigen::VectorXd& v0, const Eigen::VectorXd& f0,
                                 double dt, const Eigen::VectorXd& masses) {
  if (r0.size() != v0.size() || r0.size() != f0.size()) throw DomainError("bootstrap_verlet: dimension mismatch");
  return r0 - v0 * dt + 0.5 * acceleration(f0, masses) * dt * dt;
}

Eigen::VectorXd verlet_step(const Eigen::VectorXd& r, const Eigen::VectorXd& r_prev, const Eigen::VectorXd& f,
                            double dt, const Eigen::VectorXd& masses, VerletVariant variant) {
  if (r.size() != r_prev.size() || r.size() != f.size()) throw DomainError("verlet_step: dimension mismatch");
  const double factor = variant == VerletVariant::Standard ? 1.0 : 0.5;
  return 2.0 * r - r_prev + factor * acceleration(f, masses) * dt * dt;
}

Eigen::VectorXd langevin_friction(const Eigen::VectorXd& var, double dt, const Eigen::VectorXd& masses,
                                  double temperature_k) {
  if (var.size() != masses.size()) throw DomainError("langevin_friction: dimension mismatch");
  if (!(temperature_k > 0.0)) throw DomainError("langevin_friction: temperature must be positive");
  // In atomic units gamma = dt Var(F) / (2 m kT); converted back to 1/fs.
  const double dt_au = dt * units::kAuTimePerFs;
  const double kt = units::kBoltzmannHartreePerK * temperature_k;
  const double var_au = units::kHaPerAngstromToAu * units::kHaPerAngstromToAu;
  Eigen::VectorXd g = (dt_au * var_au / (2.0 * kt)) * var.cwiseQuotient(masses);
  return g * units::kAuTimePerFs;
}

void langevin_step(Eigen::VectorXd& r, Eigen::VectorXd& v, const Eigen::VectorXd& f, const Eigen::VectorXd& friction,
                   double dt, const Eigen::VectorXd& masses) {
  if (r.size() != v.size() || r.size() != f.size() || r.size() != friction.size())
    throw DomainError("langevin_step: dimension mismatch");
  v += dt * (-friction.cwiseProduct(v) + acceleration(f, masses));
  r += dt * v;
}

Trajectory run_nve(const MDConfig& cfg, const Eigen::VectorXd& r0, const Eigen::VectorXd& v0,
                   const ForceProvider& provider, const FrameSink& sink) {
  const Eigen::Index n = r0.size();
  cfg.validate(static_cast<std::size_t>(n / 3));
  if (v0.size() != n) throw DomainError("run_nve: velocity dimension mismatch");
  const Eigen::VectorXd m = coordinate_masses(cfg.masses);
  const int dof = static_cast<int>(n);
  const double dt = cfg.dt_fs;

  Trajectory traj;
  traj.masses = cfg.masses;
  Eigen::VectorXd r = r0;
  ForceSample s = provider(r);
  check_sample(s, n);
  Eigen::VectorXd r_prev = bootstrap_verlet(r, v0, s.forces, dt, m);
  for (int t = 0; t <= cfg.steps; ++t) {
    Eigen::VectorXd v;
    Eigen::VectorXd r_next;
    if (t < cfg.steps) {
      r_next = verlet_step(r, r_prev, s.forces, dt, m, cfg.variant);
      v = (r_next - r_prev) / (2.0 * dt);
    } else {
      // Backward difference with the force correction, second order like the
      // central difference used for the other frames.
      v = t == 0 ? v0 : Eigen::VectorXd((r - r_prev) / dt + 0.5 * dt * acceleration(s.forces, m));
    }
    traj.frames.push_back(make_frame(t, dt, r, v, s, m, dof));
    if (sink) sink(traj.frames.back());
    if (t == cfg.steps) break;
    r_prev = r;
    r = r_next;
    s = provider(r);
    check_sample(s, n);
  }
  return traj;
}

Trajectory run_langevin(const MDConfig& cfg, const Eigen::VectorXd& r0, const Eigen::VectorXd& v0,
                        const ForceProvider& provider, const FrameSink& sink) {
  const Eigen::Index n = r0.size();
  cfg.validate(static_cast<std::size_t>(n / 3));
  if (v0.size() != n) throw DomainError("run_langevin: velocity dimension mismatch");
  const Eigen::VectorXd m = coordinate_masses(cfg.masses);
  const double dt = cfg.dt_fs;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto sample = [&](const Eigen::VectorXd& r) {
    ForceSample s = provider(r);
    check_sample(s, n);
    if (s.force_variance.size() != n) s.force_variance = Eigen::VectorXd::Zero(n);
    if (cfg.external_noise > 0.0) {
      for (Eigen::Index i = 0; i < n; ++i) s.forces[i] += cfg.external_noise * gauss(rng);
      s.force_variance.array() += cfg.external_noise * cfg.external_noise;
    }
    return s;
  };

  Trajectory traj;
  traj.masses = cfg.masses;
  Eigen::VectorXd r = r0, v = v0;
  ForceSample s = sample(r);
  if (s.force_variance.maxCoeff() <= 0.0)
    throw DomainError("thermostat inactive: force estimates carry no variance; use a shot-based backend");
  auto thermostatted = [](const Eigen::VectorXd& var) { return static_cast<int>((var.array() > 0.0).count()); };

  traj.frames.push_back(make_frame(0, dt, r, v, s, m, thermostatted(s.force_variance)));
  if (sink) sink(traj.frames.back());
  for (int t = 1; t <= cfg.steps; ++t) {
    const Eigen::VectorXd gamma = langevin_friction(s.force_variance, dt, m, cfg.temperature_k);
    if ((gamma * dt).maxCoeff() >= 1.0)
      throw NumericalError("Langevin friction too large for the time step (gamma dt >= 1)");
    langevin_step(r, v, s.forces, gamma, dt, m);
    s = sample(r);
    traj.frames.push_back(make_frame(t, dt, r, v, s, m, thermostatted(s.force_variance)));
    if (sink) sink(traj.frames.back());
  }
  return traj;
}

}  // namespace qmd
