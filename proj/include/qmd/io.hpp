#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "qmd/md.hpp"

namespace qmd {

/// Shortest round-trip decimal form; identical bits give identical text.
std::string format_number(double x);

/// `<command>_<label>_<seed>.<ext>`
std::string artifact_name(const std::string& command, const std::string& label, std::uint64_t seed,
                          const std::string& ext);

/// Column names: step, t_fs, per atom x,y,z, vx,vy,vz, fx,fy,fz (atom
/// index appended), then e_pot_ha, e_kin_ha, e_tot_ha, temp_k.
std::vector<std::string> trajectory_columns(std::size_t n_atoms);
std::string trajectory_row(const TrajectoryFrame& f);

/// Small CSV table. Comment lines ("# ...") carry metadata.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
  void write(const std::filesystem::path& path) const;
};

/// Streams frames to CSV and XYZ as they are produced, flushing after
/// each frame so a failed run keeps everything up to the last good step.
class TrajectoryWriter {
 public:
  TrajectoryWriter(const std::filesystem::path& csv, const std::filesystem::path& xyz, std::size_t n_atoms,
                   const std::string& comment);
  void write(const TrajectoryFrame& f);
  FrameSink sink() {
    return [this](const TrajectoryFrame& f) { write(f); };
  }

 private:
  std::ofstream csv_;
  std::ofstream xyz_;
  std::size_t n_atoms_;
};

/// Reads a trajectory CSV written by TrajectoryWriter. Masses are not
/// stored and default to the proton mass. Throws ConfigError for a
/// missing, empty or malformed file.
Trajectory read_trajectory_csv(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace qmd
