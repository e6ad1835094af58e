#include <functional>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qmd/error.hpp"

int main(int argc, char** argv) {
  using namespace qmd;
  CLI::App app{"Ab initio molecular dynamics of small hydrogen systems with simulated VQE forces"};
  app.require_subcommand(1);

  std::string config_path;
  cli::Overrides ov;
  std::string out, backend;
  std::uint64_t seed = 0;

  const std::map<std::string, std::string> commands{
      {"integrals", "Dump AO/MO integrals and the qubit Hamiltonian"},
      {"pes-scan", "H2 potential energy and force scan"},
      {"vqe", "Single-point VQE energy and forces"},
      {"lanczos-scan", "Lanczos shift scan on H2"},
      {"opt", "Geometry optimization"},
      {"md-nve", "Microcanonical Verlet trajectory"},
      {"md-langevin", "Noise-driven Langevin trajectory"},
      {"noise-ablation", "NVE runs with one noise channel at a time"},
      {"analyze", "Statistics of a trajectory CSV"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "Run configuration (JSON)")->required();
    sub->add_option("--out", out, "Output directory (overrides config)");
    sub->add_option("--seed", seed, "Master seed (overrides config)");
    sub->add_option("--backend", backend, "Backend mode (overrides config)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (sub->count("--out")) ov.out = out;
  if (sub->count("--seed")) ov.seed = seed;
  if (sub->count("--backend")) ov.backend = backend;

  try {
    const RunConfig cfg = cli::resolve_config(config_path, ov);
    if (name == "integrals") cli::cmd_integrals(cfg);
    else if (name == "pes-scan") cli::cmd_pes_scan(cfg);
    else if (name == "vqe") cli::cmd_vqe(cfg);
    else if (name == "lanczos-scan") cli::cmd_lanczos_scan(cfg);
    else if (name == "opt") cli::cmd_opt(cfg);
    else if (name == "md-nve") cli::cmd_md(cfg, false);
    else if (name == "md-langevin") cli::cmd_md(cfg, true);
    else if (name == "noise-ablation") cli::cmd_noise_ablation(cfg);
    else if (name == "analyze") cli::cmd_analyze(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "qmd " << name << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qmd " << name << ": " << e.what() << "\n";
    return 3;
  }
  return 0;
}
