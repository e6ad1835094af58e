#include "qmd/io.hpp"

#include <charconv>
#include <sstream>

#include "qmd/error.hpp"
#include "qmd/units.hpp"

namespace qmd {

std::string format_number(double x) {
  if (x == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string artifact_name(const std::string& command, const std::string& label, std::uint64_t seed,
                          const std::string& ext) {
  return command + "_" + label + "_" + std::to_string(seed) + "." + ext;
}

std::vector<std::string> trajectory_columns(std::size_t n_atoms) {
  std::vector<std::string> c{"step", "t_fs"};
  for (std::size_t a = 0; a < n_atoms; ++a)
    for (const char* base : {"x", "y", "z", "vx", "vy", "vz", "fx", "fy", "fz"})
      c.push_back(std::string(base) + std::to_string(a));
  for (const char* e : {"e_pot_ha", "e_kin_ha", "e_tot_ha", "temp_k"}) c.emplace_back(e);
  return c;
}

std::string trajectory_row(const TrajectoryFrame& f) {
  std::string s = std::to_string(f.step) + "," + format_number(f.t_fs);
  const auto n = f.positions.size() / 3;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (const Eigen::VectorXd* v : {&f.positions, &f.velocities, &f.forces})
      for (int k = 0; k < 3; ++k) s += "," + format_number((*v)[3 * a + k]);
  }
  for (double v : {f.e_pot, f.e_kin, f.e_tot, f.temperature_k}) s += "," + format_number(v);
  return s;
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

std::string one_line(const std::string& s) {
  std::string r = s;
  for (char& c : r)
    if (c == '\n' || c == '\r') c = ' ';
  return r;
}

void ensure_parent(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
}

}  // namespace

std::string CsvTable::to_string() const {
  std::string s;
  for (const auto& c : comments) s += "# " + one_line(c) + "\n";
  s += join(columns) + "\n";
  for (const auto& r : rows) s += join(r) + "\n";
  return s;
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, to_string()); }

TrajectoryWriter::TrajectoryWriter(const std::filesystem::path& csv, const std::filesystem::path& xyz,
                                   std::size_t n_atoms, const std::string& comment)
    : n_atoms_(n_atoms) {
  ensure_parent(csv);
  ensure_parent(xyz);
  csv_.open(csv);
  xyz_.open(xyz);
  if (!csv_ || !xyz_) throw ConfigError("cannot write trajectory files in " + csv.parent_path().string());
  if (!comment.empty()) csv_ << "# " << one_line(comment) << "\n";
  csv_ << join(trajectory_columns(n_atoms)) << "\n";
  csv_.flush();
}

void TrajectoryWriter::write(const TrajectoryFrame& f) {
  csv_ << trajectory_row(f) << "\n";
  csv_.flush();
  xyz_ << n_atoms_ << "\nstep=" << f.step << " t_fs=" << format_number(f.t_fs) << " e_tot_ha=" << format_number(f.e_tot)
       << "\n";
  for (std::size_t a = 0; a < n_atoms_; ++a) {
    const auto i = static_cast<Eigen::Index>(3 * a);
    xyz_ << "H " << format_number(f.positions[i]) << " " << format_number(f.positions[i + 1]) << " "
         << format_number(f.positions[i + 2]) << "\n";
  }
  xyz_.flush();
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("trajectory file not found: " + path.string());
  std::string line;
  std::vector<std::string> header;
  Trajectory traj;
  std::size_t n_atoms = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (header.empty()) {
      header = cells;
      if (header.size() < 6 || (header.size() - 6) % 9 != 0 || header[0] != "step")
        throw ConfigError("trajectory " + path.string() + ": unexpected header");
      n_atoms = (header.size() - 6) / 9;
      if (header != trajectory_columns(n_atoms))
        throw ConfigError("trajectory " + path.string() + ": unexpected header");
      continue;
    }
    if (cells.size() != header.size())
      throw ConfigError("trajectory " + path.string() + ": wrong column count on line " + std::to_string(lineno));
    std::vector<double> v(cells.size());
    try {
      for (std::size_t i = 0; i < cells.size(); ++i) v[i] = std::stod(cells[i]);
    } catch (const std::exception&) {
      throw ConfigError("trajectory " + path.string() + ": bad number on line " + std::to_string(lineno));
    }
    TrajectoryFrame f;
    f.step = static_cast<int>(v[0]);
    f.t_fs = v[1];
    const auto m = static_cast<Eigen::Index>(3 * n_atoms);
    f.positions.resize(m);
    f.velocities.resize(m);
    f.forces.resize(m);
    for (std::size_t a = 0; a < n_atoms; ++a)
      for (int k = 0; k < 3; ++k) {
        const std::size_t base = 2 + 9 * a;
        const auto i = static_cast<Eigen::Index>(3 * a + static_cast<std::size_t>(k));
        f.positions[i] = v[base + static_cast<std::size_t>(k)];
        f.velocities[i] = v[base + 3 + static_cast<std::size_t>(k)];
        f.forces[i] = v[base + 6 + static_cast<std::size_t>(k)];
      }
    const std::size_t e = 2 + 9 * n_atoms;
    f.e_pot = v[e];
    f.e_kin = v[e + 1];
    f.e_tot = v[e + 2];
    f.temperature_k = v[e + 3];
    traj.frames.push_back(std::move(f));
  }
  if (header.empty() || traj.frames.empty()) throw ConfigError("trajectory " + path.string() + " is empty");
  traj.masses.assign(n_atoms, units::kProtonMassAu);
  return traj;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qmd
