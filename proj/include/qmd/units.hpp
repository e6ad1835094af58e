#pragma once

// Conversion constants (CODATA 2014/2018). All internal arithmetic is in
// atomic units; angstrom and femtosecond appear only at I/O boundaries.

namespace qmd::units {

inline constexpr double kBohrPerAngstrom = 1.0 / 0.52917721067;
inline constexpr double kAngstromPerBohr = 0.52917721067;
inline constexpr double kAuTimePerFs = 1.0 / 2.4188843265857e-2;
inline constexpr double kFsPerAuTime = 2.4188843265857e-2;
inline constexpr double kBoltzmannHartreePerK = 3.166811563e-6;
inline constexpr double kProtonMassAu = 1836.15267343;
inline constexpr double kHartreePerKcalMol = 1.0 / 627.509474;
inline constexpr double kPi = 3.14159265358979323846;

// Force: Ha/angstrom -> Ha/bohr.
inline constexpr double kHaPerAngstromToAu = kAngstromPerBohr;
// Velocity: angstrom/fs -> bohr/au-time.
inline constexpr double kAngstromPerFsToAu = kBohrPerAngstrom * kFsPerAuTime;

}  // namespace qmd::units
