#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qmd {

enum class VerletVariant { Standard, HalfForce };
enum class Integrator { Verlet, Langevin };

VerletVariant parse_verlet_variant(const std::string& s);
std::string to_string(VerletVariant v);

/// Units: angstrom, femtosecond, hartree, electron masses.
struct MDConfig {
  double dt_fs = 0.2;
  int steps = 500;
  std::vector<double> masses;  // per atom, electron masses
  Integrator integrator = Integrator::Verlet;
  double temperature_k = 423.0;
  VerletVariant variant = VerletVariant::Standard;
  std::uint64_t seed = 1;
  double equilibration_fs = 400.0;
  /// Optional white-noise force added on top of the measured noise
  /// (standard deviation in Ha/angstrom); 0 disables it.
  double external_noise = 0.0;

  void validate(std::size_t n_atoms) const;
};

/// Energy and forces at one geometry. force_variance holds the diagonal of
/// the force estimator covariance ((Ha/angstrom)^2).
struct ForceSample {
  double energy = 0.0;
  Eigen::VectorXd forces;
  Eigen::VectorXd force_variance;
  double energy_variance = 0.0;
};

using ForceProvider = std::function<ForceSample(const Eigen::VectorXd& positions)>;

struct TrajectoryFrame {
  int step = 0;
  double t_fs = 0.0;
  Eigen::VectorXd positions;   // angstrom
  Eigen::VectorXd velocities;  // angstrom / fs
  Eigen::VectorXd forces;      // Ha / angstrom
  double e_pot = 0.0;
  double e_kin = 0.0;
  double e_tot = 0.0;
  double temperature_k = 0.0;
  Eigen::VectorXd force_variance;
};

struct Trajectory {
  std::vector<double> masses;  // per atom
  std::vector<TrajectoryFrame> frames;
};

using FrameSink = std::function<void(const TrajectoryFrame&)>;

/// Per-coordinate masses (3N) from per-atom masses.
Eigen::VectorXd coordinate_masses(const std::vector<double>& atom_masses);

/// Acceleration in angstrom/fs^2 for forces in Ha/angstrom and masses in m_e.
Eigen::VectorXd acceleration(const Eigen::VectorXd& forces, const Eigen::VectorXd& masses);

/// Kinetic energy (Ha) for velocities in angstrom/fs.
double kinetic_energy(const Eigen::VectorXd& v, const Eigen::VectorXd& masses);
double kinetic_temperature(double e_kin, int degrees_of_freedom);

/// R_{-1} = R0 - v0 dt + 1/2 a0 dt^2.
Eigen::VectorXd bootstrap_verlet(const Eigen::VectorXd& r0, const Eigen::VectorXd& v0, const Eigen::VectorXd& f0,
                                 double dt_fs, const Eigen::VectorXd& masses);

/// Position-only Verlet: R+ = 2R - R- + a dt^2 (HalfForce: 1/2 a dt^2).
Eigen::VectorXd verlet_step(const Eigen::VectorXd& r, const Eigen::VectorXd& r_prev, const Eigen::VectorXd& f,
                            double dt_fs, const Eigen::VectorXd& masses,
                            VerletVariant variant = VerletVariant::Standard);

/// Friction (1/fs) per coordinate from the measured force variance:
/// gamma = dt Var(F) / (2 m k_B T).
Eigen::VectorXd langevin_friction(const Eigen::VectorXd& force_variance, double dt_fs, const Eigen::VectorXd& masses,
                                  double temperature_k);

/// Semi-implicit Euler: v' = v + dt (-gamma v + F/m), R' = R + dt v'.
/// `friction` in 1/fs; the stochastic part is whatever noise F carries.
void langevin_step(Eigen::VectorXd& r, Eigen::VectorXd& v, const Eigen::VectorXd& f, const Eigen::VectorXd& friction,
                   double dt_fs, const Eigen::VectorXd& masses);

/// Microcanonical run; frames 0..steps, each streamed to `sink`.
Trajectory run_nve(const MDConfig& cfg, const Eigen::VectorXd& r0, const Eigen::VectorXd& v0,
                   const ForceProvider& forces, const FrameSink& sink = {});

/// Thermostatted run from r0 with the given initial velocities. Throws
/// DomainError when the first force sample has zero variance.
/// Temperatures count only coordinates with nonzero friction.
Trajectory run_langevin(const MDConfig& cfg, const Eigen::VectorXd& r0, const Eigen::VectorXd& v0,
                        const ForceProvider& forces, const FrameSink& sink = {});

}  // namespace qmd
