#pragma once

#include <optional>
#include <string>

#include "qmd/config.hpp"

namespace qmd::cli {

struct Overrides {
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> backend;
};

/// Loads the config, applies command-line overrides and validates.
RunConfig resolve_config(const std::string& path, const Overrides& o);

void cmd_integrals(const RunConfig& cfg);
void cmd_pes_scan(const RunConfig& cfg);
void cmd_vqe(const RunConfig& cfg);
void cmd_lanczos_scan(const RunConfig& cfg);
void cmd_opt(const RunConfig& cfg);
void cmd_md(const RunConfig& cfg, bool langevin);
void cmd_noise_ablation(const RunConfig& cfg);
void cmd_analyze(const RunConfig& cfg);

}  // namespace qmd::cli
