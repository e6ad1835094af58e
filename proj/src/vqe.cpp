#include "qmd/vqe.hpp"

#include <cmath>
#include <random>

#include "json.hpp"
#include "qmd/error.hpp"

namespace qmd {

std::vector<double> initial_parameters(int count, double jitter, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-jitter, jitter);
  std::vector<double> p(static_cast<std::size_t>(count));
  for (auto& v : p) v = jitter > 0.0 ? u(rng) : 0.0;
  return p;
}

VQEResult vqe_minimize(const PauliSum& h, Evaluator& ev, const std::vector<double>& init, const VQEOptions& opts) {
  if (static_cast<int>(init.size()) != ev.ansatz().parameter_count())
    throw DomainError("vqe: initial parameters have length " + std::to_string(init.size()) + ", ansatz needs " +
                      std::to_string(ev.ansatz().parameter_count()));
  if (h.n_qubits() != ev.ansatz().n_qubits) throw DomainError("vqe: Hamiltonian and ansatz sizes differ");

  const std::uint64_t stream = ev.new_stream();
  const Objective f = [&](const std::vector<double>& x) { return ev.energy(h, x, stream); };

  OptimizerOptions oo = opts.optimizer;
  // Stagnation is only meaningful for a noise-free objective.
  if (ev.backend().sampled()) oo.stagnation_window = 0;
  const OptimizerResult opt = minimize(f, init, oo);

  VQEResult r;
  r.parameters = opt.x;
  r.optimized_energy = opt.fx;
  r.evaluations = opt.evaluations;
  r.converged = opt.converged;
  r.warning = opt.warning;
  for (std::size_t i = 0; i < opt.trace.size(); ++i) r.trace.emplace_back(static_cast<int>(i) + 1, opt.trace[i]);
  if (ev.backend().sampled() && opts.reevaluate) {
    const Estimate e = ev.evaluate({h}, r.parameters);
    r.energy = e.values[0];
    r.energy_variance = e.covariance(0, 0);
  } else {
    r.energy = opt.fx;
  }
  return r;
}

std::string VQEResult::to_json_text() const {
  nlohmann::json j;
  j["parameters"] = parameters;
  j["energy"] = energy;
  j["optimized_energy"] = optimized_energy;
  j["energy_variance"] = energy_variance;
  j["evaluations"] = evaluations;
  j["converged"] = converged;
  j["warning"] = warning;
  j["trace"] = nlohmann::json::array();
  for (const auto& [it, e] : trace) j["trace"].push_back({it, e});
  return j.dump(2);
}

VQEResult VQEResult::from_json_text(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    VQEResult r;
    r.parameters = j.at("parameters").get<std::vector<double>>();
    r.energy = j.at("energy").get<double>();
    r.optimized_energy = j.value("optimized_energy", r.energy);
    r.energy_variance = j.value("energy_variance", 0.0);
    r.evaluations = j.value("evaluations", 0);
    r.converged = j.value("converged", false);
    r.warning = j.value("warning", std::string());
    if (j.contains("trace"))
      for (const auto& e : j["trace"]) r.trace.emplace_back(e.at(0).get<int>(), e.at(1).get<double>());
    for (double p : r.parameters)
      if (!std::isfinite(p)) throw ConfigError("VQE restart file: non-finite parameter");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("VQE restart file: ") + e.what());
  }
}

}  // namespace qmd
