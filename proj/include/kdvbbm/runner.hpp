#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "kdvbbm/artifacts.hpp"
#include "kdvbbm/config.hpp"
#include "kdvbbm/energy.hpp"
#include "kdvbbm/errors.hpp"
#include "kdvbbm/estimates.hpp"
#include "kdvbbm/evolution.hpp"
#include "kdvbbm/field.hpp"
#include "kdvbbm/grid.hpp"
#include "kdvbbm/norms.hpp"
#include "kdvbbm/picard.hpp"
#include "kdvbbm/quadrature.hpp"
#include "kdvbbm/soliton.hpp"
#include "kdvbbm/split.hpp"

namespace kdvbbm {

struct RunOutcome {
  int exit_code = 0;
  std::string status = "ok";
  std::vector<std::string> artifacts;  // file names written under dir
  std::filesystem::path dir;
};

namespace detail {

inline double max_abs_sample(const Field& f) {
  Field copy = f;
  ensure_samples(copy);
  double worst = 0.0;
  for (const complex& v : copy.samples) worst = std::max(worst, std::abs(v.real()));
  return worst;
}

inline void save_artifact(const std::filesystem::path& dir, const std::string& name,
                          const std::string& bytes, RunOutcome& out) {
  write_text_file(dir / name, bytes);
  out.artifacts.push_back(name);
}

inline void write_state_csv(const std::filesystem::path& dir, const std::string& name,
                            const Grid& g, const std::vector<complex>& spectrum,
                            RunOutcome& out) {
  Field f = field_from_spectrum(g, spectrum);
  ensure_samples(f);
  CsvWriter csv({"x", "eta"});
  for (std::size_t j = 0; j < g.N; ++j)
    csv.put(g.node(j)).put(f.samples[j].real()), csv.end_row();
  save_artifact(dir, name, csv.bytes(), out);
}

inline void write_trajectory_csv(const std::filesystem::path& dir, const Trajectory& traj,
                                 RunOutcome& out) {
  std::vector<std::string> columns = {"time",        "l2",
                                      "linf",        "energy",
                                      "energy_mass", "energy_gradient",
                                      "energy_curvature"};
  for (const auto& [label, values] : traj.norm_history) columns.push_back(label);
  CsvWriter csv(columns);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Field state = traj.state_field(i);
    csv.put(traj.times[i])
        .put(spectral_l2(state))
        .put(max_abs_sample(state))
        .put(traj.energy[i].value)
        .put(traj.energy[i].mass_part)
        .put(traj.energy[i].gradient_part)
        .put(traj.energy[i].curvature_part);
    for (const auto& [label, values] : traj.norm_history) csv.put(values[i]);
    csv.end_row();
  }
  save_artifact(dir, "trajectory.csv", csv.bytes(), out);
}

inline void run_simulate(const RunConfig& cfg, const std::filesystem::path& dir,
                         RunOutcome& out) {
  const Grid g = make_grid(cfg.L, cfg.N);
  const Field eta0 = make_initial(g, cfg.initial);
  SolveConfig sc;
  sc.params = cfg.params;
  sc.dt = cfg.simulate.dt;
  sc.t_end = cfg.simulate.t_end;
  sc.dealias = cfg.simulate.dealias;
  sc.record_every = cfg.simulate.record_every;
  sc.record_norms = cfg.simulate.norms;
  sc.blowup_linf = cfg.simulate.blowup_linf;
  try {
    const Trajectory traj = solve(eta0, sc);
    write_trajectory_csv(dir, traj, out);
    write_state_csv(dir, "final_state.csv", traj.grid, traj.final_state(), out);
  } catch (const blowup_error& e) {
    // Keep whatever was recorded before the threshold tripped.
    if (e.partial_trajectory && e.partial_trajectory->size() > 0) {
      write_trajectory_csv(dir, *e.partial_trajectory, out);
      write_state_csv(dir, "final_state.csv", e.partial_trajectory->grid,
                      e.partial_trajectory->final_state(), out);
    }
    out.status = "blowup";
    out.exit_code = 4;
  }
}

inline void run_picard(const RunConfig& cfg, const std::filesystem::path& dir, RunOutcome& out) {
  const Grid g = make_grid(cfg.L, cfg.N);
  Field eta0 = make_initial(g, cfg.initial);
  const PicardBlock& b = cfg.picard;
  double norm0 = space_norm(eta0, b.norm);
  if (b.rescale_to > 0.0) {
    if (norm0 == 0.0)
      throw validation_error("picard.rescale_to", "a nonzero datum to rescale");
    eta0 = scaled(eta0, b.rescale_to / norm0);
    norm0 = b.rescale_to;
  }
  PicardConfig pc;
  pc.params = cfg.params;
  pc.T = b.T > 0.0 ? b.T : existence_time(norm0, b.strength_cs);
  if (!std::isfinite(pc.T))
    throw validation_error("picard.T",
                           "an explicit horizon (the zero datum has an unbounded lifespan)");
  pc.nodes = b.nodes;
  pc.increment_norm = b.norm;
  pc.tol = b.tol;
  pc.max_iter = b.max_iter;

  const PicardReport rep = picard_fixed_point(eta0, pc);

  CsvWriter csv({"iteration", "increment", "ratio"});
  for (std::size_t i = 0; i < rep.increments.size(); ++i) {
    csv.put(i + 1).put(rep.increments[i]);
    if (i > 0)
      csv.put(rep.ratios[i - 1]);
    else
      csv.put("");
    csv.end_row();
  }
  save_artifact(dir, "picard.csv", csv.bytes(), out);
  write_state_csv(dir, "final_state.csv", rep.grid, rep.path.back(), out);

  if (!rep.converged) {
    out.status = rep.diverged ? "diverged" : "no_convergence";
    out.exit_code = 4;
  }
}

inline void run_global_split(const RunConfig& cfg, const std::filesystem::path& dir,
                             RunOutcome& out) {
  const Grid g = make_grid(cfg.L, cfg.N);
  const Field eta0 = make_initial(g, cfg.initial);
  const SplitBlock& b = cfg.split;
  SplitConfig sc;
  sc.params = cfg.params;
  sc.s = b.s;
  sc.p = b.p;
  sc.n_cut = b.n_cut;
  sc.t0 = b.t0;
  sc.t0_constant = b.t0_constant;
  sc.legs = b.legs;
  sc.dt = b.dt;
  sc.dealias = b.dealias;
  sc.record_every = b.record_every;

  const SplitRun run = run_split(eta0, sc);

  CsvWriter legs({"leg", "t_start", "t_end", "v_norm_start", "junction_mismatch", "increment",
                  "increment_pairing", "h_energy", "u_energy_start"});
  for (std::size_t k = 0; k < run.legs.size(); ++k) {
    const SplitLeg& leg = run.legs[k];
    legs.put(k)
        .put(leg.t_start)
        .put(leg.t_end)
        .put(leg.v_norm_start)
        .put(leg.junction_mismatch)
        .put(leg.increment)
        .put(leg.increment_pairing)
        .put(leg.h_energy)
        .put(run.u_energy_at_starts[k]);
    legs.end_row();
  }
  save_artifact(dir, "legs.csv", legs.bytes(), out);

  CsvWriter snaps({"time", "l2"});
  for (std::size_t i = 0; i < run.snapshot_times.size(); ++i) {
    const Field glued = field_from_spectrum(run.grid, run.glued_snapshots[i]);
    snaps.put(run.snapshot_times[i]).put(spectral_l2(glued));
    snaps.end_row();
  }
  save_artifact(dir, "snapshots.csv", snaps.bytes(), out);

  std::vector<complex> glued_final(run.u_final.size());
  for (std::size_t m = 0; m < glued_final.size(); ++m)
    glued_final[m] = run.u_final[m] + run.v_final[m];
  write_state_csv(dir, "final_state.csv", run.grid, glued_final, out);
}

inline void run_norms(const RunConfig& cfg, const std::filesystem::path& dir, RunOutcome& out) {
  const Grid g = make_grid(cfg.L, cfg.N);
  const Field eta0 = make_initial(g, cfg.initial);
  CsvWriter csv({"label", "space", "s", "p", "r", "value"});
  for (const NormSpec& spec : cfg.norm_specs) {
    const char* space = spec.space == SpaceKind::Modulation
                            ? "modulation"
                            : (spec.space == SpaceKind::SobolevLp ? "sobolev" : "fourier");
    csv.put(norm_label(spec))
        .put(space)
        .put(spec.s)
        .put(spec.p)
        .put(spec.r)
        .put(space_norm(eta0, spec));
    csv.end_row();
  }
  save_artifact(dir, "norms.csv", csv.bytes(), out);
}

inline void run_verify_estimates(const RunConfig& cfg, const std::filesystem::path& dir,
                                 RunOutcome& out) {
  const EstimatesBlock& b = cfg.estimates;

  EstimateProbeConfig base;
  base.params = cfg.params;
  base.L = cfg.L;
  base.resolutions = b.resolutions;
  base.count = b.count;
  base.ensemble.decay = b.decay;
  base.ensemble.amplitude = b.amplitude;
  base.ensemble.band_limit = b.band_limit;
  base.ensemble.seed = cfg.seed;

  CsvWriter campaign({"kind", "s", "p", "N", "max_ratio", "slope"});
  for (const EstimateProbeResult& row : run_campaign(base, b.grid)) {
    for (std::size_t i = 0; i < row.resolutions.size(); ++i) {
      campaign.put(estimate_name(row.kind))
          .put(row.s)
          .put(row.p)
          .put(row.resolutions[i])
          .put(row.max_ratio[i])
          .put(row.slope);
      campaign.end_row();
    }
  }
  save_artifact(dir, "estimates.csv", campaign.bytes(), out);

  GrowthProbeConfig gc;
  gc.s = b.growth.s;
  gc.r = b.growth.r;
  gc.p = b.growth.p;
  gc.N = b.growth.N;
  gc.times = b.growth.times;
  gc.count = b.growth.count;
  gc.ensemble.seed = cfg.seed;
  const GrowthProbeResult growth = probe_semigroup_growth(gc);
  CsvWriter gcsv({"time", "max_ratio", "slope"});
  for (std::size_t i = 0; i < growth.times.size(); ++i) {
    gcsv.put(growth.times[i]).put(growth.max_ratio[i]).put(growth.slope);
    gcsv.end_row();
  }
  save_artifact(dir, "growth.csv", gcsv.bytes(), out);

  MultiplierProbeConfig mc;
  mc.params = cfg.params;
  mc.L = cfg.L;
  mc.N = b.quotients.N;
  mc.exponents = b.quotients.exponents;
  mc.count = b.quotients.count;
  mc.ensemble.seed = cfg.seed;
  CsvWriter qcsv({"kind", "exponent", "max_ratio"});
  for (QuotientKind kind : {QuotientKind::tau_over_omega, QuotientKind::psi_bessel_over_omega,
                            QuotientKind::derivative_over_bessel}) {
    const MultiplierProbeResult res = probe_multiplier_norm(kind, mc);
    for (std::size_t i = 0; i < res.exponents.size(); ++i) {
      qcsv.put(quotient_name(kind)).put(res.exponents[i]).put(res.max_ratio[i]);
      qcsv.end_row();
    }
  }
  save_artifact(dir, "quotients.csv", qcsv.bytes(), out);
}

inline void run_soliton(const RunConfig& cfg, const std::filesystem::path& dir,
                        RunOutcome& out) {
  const Grid g = make_grid(cfg.L, cfg.N);
  const SolitonParams sp = solitary_constants();
  const ModelParams mp = solitary_model(cfg.soliton.delta1);

  nlohmann::json report;
  report["speed"] = sp.c;
  report["amplitude"] = sp.A;
  report["inverse_width"] = sp.B;
  report["relations"] = {
      {"width_speed", sp.B * sp.B - 3.0 * (sp.c - 1.0) / (sp.c + 1.0)},
      {"amplitude_width", sp.A + (56.0 / 3.0) * sp.B * sp.B},
      {"closure", -2.0 * sp.B * sp.B * (1.0 + sp.c) + 7.0 * sp.A * sp.B * sp.B + 3.0 * sp.A}};
  report["ode_residual"] = ode_residual(sp, g, cfg.soliton.x0);
  report["pde_residual"] = pde_residual(sp, mp, g, cfg.soliton.x0);
  report["params"] = {{"gamma1", mp.gamma1},
                      {"gamma2", mp.gamma2},
                      {"delta1", mp.delta1},
                      {"delta2", mp.delta2},
                      {"gamma", mp.gamma}};
  save_artifact(dir, "soliton.json", report.dump(2) + "\n", out);
}

}  // namespace detail

// Runs the configured command, writes its artifacts plus a manifest into
// cfg.out, and reports the exit code the CLI should use: 0 on success, 4 on
// a numerical failure (with whatever partial artifacts were recoverable).
// Validation problems surface as exceptions for the caller to map.
inline RunOutcome execute(const RunConfig& cfg) {
  const auto tick = std::chrono::steady_clock::now();
  RunOutcome out;
  out.dir = std::filesystem::path(cfg.out);
  std::filesystem::create_directories(out.dir);

  try {
    switch (cfg.command) {
      case Command::simulate: detail::run_simulate(cfg, out.dir, out); break;
      case Command::picard: detail::run_picard(cfg, out.dir, out); break;
      case Command::global_split: detail::run_global_split(cfg, out.dir, out); break;
      case Command::norms: detail::run_norms(cfg, out.dir, out); break;
      case Command::verify_estimates: detail::run_verify_estimates(cfg, out.dir, out); break;
      case Command::soliton: detail::run_soliton(cfg, out.dir, out); break;
    }
  } catch (const blowup_error&) {
    // A threshold trip outside run_simulate (the split legs run the same
    // stepper) still ends the run with its artifacts-so-far preserved.
    out.status = "blowup";
    out.exit_code = 4;
  }

  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - tick).count();
  write_manifest(out.dir, make_manifest(command_name(cfg.command), cfg.seed, cfg.inputs_hash,
                                        cfg.resolved, out.status, out.artifacts, wall_ms));
  return out;
}

}  // namespace kdvbbm
