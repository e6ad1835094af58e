#include "qmd/studies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qmd/error.hpp"
#include "qmd/lanczos.hpp"
#include "qmd/sampling.hpp"

namespace qmd {

ForceProvider make_force_provider(QuantumForceField& ff, const Molecule& shape) {
  return [&ff, shape](const Eigen::VectorXd& r) {
    const PointResult p = ff.compute(shape.with_coordinates(r));
    ForceSample s;
    s.energy = p.energy;
    s.energy_variance = p.energy_variance;
    s.forces = p.force.forces;
    s.force_variance = p.force.covariance.size() > 0 ? Eigen::VectorXd(p.force.covariance.diagonal())
                                                     : Eigen::VectorXd::Zero(p.force.forces.size());
    return s;
  };
}

GeometryForces make_geometry_forces(QuantumForceField& ff) {
  return [&ff](const Molecule& mol) { return make_force_provider(ff, mol)(mol.coordinates()); };
}

QuantumForceField make_force_field(const HamiltonianBuilder& builder, const Molecule& mol, const QuantumBackend& backend,
                                   int ansatz_depth, const ForceFieldSettings& settings) {
  HamiltonianBuilder b = builder;
  const int nq = b.build(mol).hamiltonian.n_qubits();
  return QuantumForceField(std::move(b), Evaluator(backend, Ansatz{nq, ansatz_depth}), settings);
}

std::vector<PesPoint> pes_scan(HamiltonianBuilder builder, const std::vector<double>& bonds, double delta) {
  std::vector<PesPoint> out;
  for (double r : bonds) {
    const Molecule mol = make_h2(r);
    const ExactForceReport rep = exact_reference_force(mol, delta, builder);
    PesPoint p;
    p.bond = r;
    p.energy = rep.energy;
    p.force_pes = rep.pes.forces[5];
    p.force_hf = rep.hellmann_feynman.forces[5];
    p.pulay_error = rep.pulay_error;
    p.degenerate = rep.degenerate;
    out.push_back(p);
  }
  return out;
}

double pes_minimum(const std::vector<PesPoint>& scan) {
  if (scan.size() < 3) throw DomainError("PES minimum: need at least three points");
  std::size_t k = 0;
  for (std::size_t i = 1; i < scan.size(); ++i)
    if (scan[i].energy < scan[k].energy) k = i;
  if (k == 0 || k + 1 == scan.size()) return scan[k].bond;
  // Cubic Hermite on the bracketing interval, slopes from the exact forces
  // (dE/dR = -force_pes). A parabola through three energies is biased by the
  // anharmonicity on coarse grids.
  const std::size_t lo = -scan[k].force_pes > 0.0 ? k - 1 : k;
  const double a = scan[lo].bond, h = scan[lo + 1].bond - a;
  const double y0 = scan[lo].energy, y1 = scan[lo + 1].energy;
  const double m0 = -scan[lo].force_pes, m1 = -scan[lo + 1].force_pes;
  if (m0 < 0.0 && m1 > 0.0) {
    const double c2 = (3.0 * (y1 - y0) / h - 2.0 * m0 - m1) / h;
    const double c3 = (m0 + m1 - 2.0 * (y1 - y0) / h) / (h * h);
    // m0 + 2 c2 s + 3 c3 s^2 = 0
    double s = 0.0;
    if (std::abs(c3) < 1e-14 * std::abs(c2)) {
      s = -m0 / (2.0 * c2);
    } else {
      const double disc = std::max(4.0 * c2 * c2 - 12.0 * c3 * m0, 0.0);
      const double q = -0.5 * (2.0 * c2 + std::copysign(std::sqrt(disc), c2));
      const double r1 = q / (3.0 * c3), r2 = m0 / q;
      s = (r1 >= 0.0 && r1 <= h) ? r1 : r2;
    }
    if (s >= 0.0 && s <= h) return a + s;
  }
  const double x0 = scan[k - 1].bond, x1 = scan[k].bond, x2 = scan[k + 1].bond;
  const double e0 = scan[k - 1].energy, e1 = scan[k].energy, e2 = scan[k + 1].energy;
  const double num = (x1 - x0) * (x1 - x0) * (e1 - e2) - (x1 - x2) * (x1 - x2) * (e1 - e0);
  const double den = (x1 - x0) * (e1 - e2) - (x1 - x2) * (e1 - e0);
  if (den == 0.0) return x1;
  return x1 - 0.5 * num / den;
}

std::vector<LanczosScanRow> scan_lanczos_d(MappingKind mapping, const std::vector<double>& bonds,
                                           const std::vector<double>& d_values, const QuantumBackend& backend,
                                           int repeats, int ansatz_depth, const VQEOptions& vqe) {
  if (repeats < 1) throw ConfigError("d-scan: repeats must be positive");
  if (d_values.empty()) throw ConfigError("d-scan: empty d grid");
  std::vector<LanczosScanRow> rows;
  HamiltonianBuilder builder(mapping);
  for (std::size_t bi = 0; bi < bonds.size(); ++bi) {
    const QubitProblem prob = builder.build(make_h2(bonds[bi]));
    const double e_exact = exact_ground_energy(prob);
    const PauliSum& h = prob.hamiltonian;
    const int nq = h.n_qubits();
    const PauliSum h_el = h - PauliSum::constant(nq, prob.mo.nuclear_repulsion);

    std::vector<PauliSum> obs;
    for (double d : d_values) {
      const LanczosTerms t = lanczos_terms({h}, h_el, d);
      obs.push_back(t.numerators[0]);
      obs.push_back(t.denominator);
      obs.push_back(t.energy_numerator);
    }

    const std::size_t nd = d_values.size();
    std::vector<std::vector<double>> values(nd);
    std::vector<double> last_sigma(nd, 0.0);
    std::vector<bool> cond(nd, true);
    for (int k = 0; k < repeats; ++k) {
      QuantumBackend b = backend;
      b.seed = derive_seed(backend.seed, bi, static_cast<std::uint64_t>(k));
      Evaluator ev(b, Ansatz{nq, ansatz_depth});
      const auto init = initial_parameters(ev.ansatz().parameter_count(), 0.05, 7);
      VQEOptions vo = vqe;
      vo.reevaluate = false;
      const VQEResult res = vqe_minimize(h, ev, init, vo);
      const Estimate e = ev.evaluate(obs, res.parameters, ev.new_stream());
      for (std::size_t di = 0; di < nd; ++di) {
        const auto at = static_cast<Eigen::Index>(3 * di);
        const LanczosEstimate le = lanczos_from_estimate(slice(e, at, 3), 1, d_values[di]);
        values[di].push_back(le.values[0]);
        last_sigma[di] = std::sqrt(std::max(le.covariance(0, 0), 0.0));
        cond[di] = cond[di] && le.diagnostics.condition_holds;
      }
    }
    for (std::size_t di = 0; di < nd; ++di) {
      LanczosScanRow row;
      row.bond = bonds[bi];
      row.d = d_values[di];
      const auto& v = values[di];
      const double n = static_cast<double>(v.size());
      const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
      row.error = mean - e_exact;
      for (double x : v) row.mean_abs_error += std::abs(x - e_exact) / n;
      if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        row.sigma = std::sqrt(ss / (n - 1.0));
      } else {
        row.sigma = last_sigma[di];
      }
      row.condition_holds = cond[di];
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

std::vector<double> ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j);
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("spearman: need two equal-length series");
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

AblationRun run_ablation_channel(const std::string& channel, bool mitigation, const Molecule& start,
                                 const HamiltonianBuilder& builder, const QuantumBackend& noisy_backend,
                                 int ansatz_depth, const ForceFieldSettings& settings, const MDConfig& md,
                                 const FrameSink& sink) {
  if (!noisy_backend.noise) throw ConfigError("noise ablation needs a noise model");
  QuantumBackend b = noisy_backend;
  b.mode = BackendMode::NoisyShots;
  b.mitigation = mitigation;
  NoiseModel m = *noisy_backend.noise;
  if (channel == "none") {
    m.depolarizing = m.thermal = m.readout = false;
  } else if (channel == "all") {
    m.depolarizing = m.thermal = m.readout = true;
  } else if (channel == "depolarizing" || channel == "thermal" || channel == "readout") {
    m = m.only(channel);
  } else {
    throw ConfigError("noise ablation: unknown channel '" + channel +
                      "' (none, depolarizing, thermal, readout, all)");
  }
  b.noise = m;

  QuantumForceField ff = make_force_field(builder, start, b, ansatz_depth, settings);
  AblationRun run;
  run.channel = channel;
  run.mitigation = mitigation;
  run.trajectory =
      run_nve(md, start.coordinates(), Eigen::VectorXd::Zero(start.coordinates().size()), make_force_provider(ff, start),
              sink);

  HamiltonianBuilder ref = builder;
  const auto& fr = run.trajectory.frames;
  const double n = static_cast<double>(fr.size());
  for (const auto& f : fr) {
    const double e0 = exact_ground_energy(ref.build(start.with_coordinates(f.positions)));
    run.epot_offset += (f.e_pot - e0) / n;
    run.ekin_mean += f.e_kin / n;
  }
  const std::size_t q = std::max<std::size_t>(fr.size() / 4, 1);
  double first = 0.0, last = 0.0;
  for (std::size_t i = 0; i < q; ++i) {
    first += fr[i].e_kin / static_cast<double>(q);
    last += fr[fr.size() - 1 - i].e_kin / static_cast<double>(q);
  }
  run.ekin_decay = first - last;
  return run;
}

}  // namespace qmd
