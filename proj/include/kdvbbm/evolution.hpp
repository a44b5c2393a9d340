#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kdvbbm/energy.hpp"
#include "kdvbbm/etdrk4.hpp"
#include "kdvbbm/norms.hpp"

namespace kdvbbm {

// Recorded history of a time integration: spectra at the recorded times plus
// per-record diagnostics (energy components and any requested norms, keyed by
// their printable labels).
struct Trajectory {
  Grid grid{0.0, 0};
  ModelParams params;
  std::vector<double> times;
  std::vector<std::vector<complex>> states;
  std::vector<EnergyValue> energy;
  std::map<std::string, std::vector<double>> norm_history;

  std::size_t size() const { return times.size(); }

  Field state_field(std::size_t i) const {
    return field_from_spectrum(grid, states.at(i));
  }

  const std::vector<complex>& final_state() const { return states.back(); }
};

struct SolveConfig {
  ModelParams params;
  double dt = 1e-4;
  double t_end = 1.0;
  bool dealias = true;
  // Switches the nonlinear term off entirely, so the stepper reproduces the
  // free propagator. Used to isolate linear behaviour in tests.
  bool linear_only = false;
  // Record every k-th step (plus the initial and final states). 0 records
  // only the endpoints.
  std::size_t record_every = 0;
  std::vector<NormSpec> record_norms;
  // Abort threshold for the max pointwise magnitude seen by the stepper.
  double blowup_linf = 1e8;
};

// Thrown when the state exceeds the configured pointwise threshold. Carries
// the history up to the last completed step so callers can inspect and write
// out what was computed before the abort.
class blowup_error : public std::runtime_error {
 public:
  blowup_error(double t, double linf, std::shared_ptr<Trajectory> partial)
      : std::runtime_error("solution magnitude " + std::to_string(linf) +
                           " exceeded blowup threshold at t = " + std::to_string(t)),
        t_reached(t),
        linf_seen(linf),
        partial_trajectory(std::move(partial)) {}

  double t_reached;
  double linf_seen;
  std::shared_ptr<Trajectory> partial_trajectory;
};

namespace detail {

inline void record_state(Trajectory& traj, double t, const std::vector<complex>& v,
                         const std::vector<NormSpec>& specs) {
  traj.times.push_back(t);
  traj.states.push_back(v);
  traj.energy.push_back(energy(traj.grid, v, traj.params));
  for (const auto& spec : specs) {
    const Field f = field_from_spectrum(traj.grid, v);
    traj.norm_history[norm_label(spec)].push_back(space_norm(f, spec));
  }
}

}  // namespace detail

// Integrates the initial state to t_end with fixed-step ETDRK4. The number of
// steps is round(t_end/dt); dt must divide t_end to within roundoff so the
// requested final time is actually reached. The datum's Nyquist mode is
// zeroed on ingestion: it carries no usable derivative information and a
// real-valued state needs it real anyway.
inline Trajectory solve(const Field& initial, const SolveConfig& cfg) {
  Field init = initial;
  ensure_spectrum(init);
  const Grid g = init.grid;

  const double steps_exact = cfg.t_end / cfg.dt;
  const auto steps = static_cast<std::size_t>(std::llround(steps_exact));
  if (steps == 0 || std::abs(steps_exact - static_cast<double>(steps)) > 1e-8)
    throw config_error("solve: dt must divide t_end into a whole number of steps");

  auto traj = std::make_shared<Trajectory>();
  traj->grid = g;
  traj->params = cfg.params;

  std::vector<complex> v = init.spectrum;
  v[g.nyquist_slot()] = complex{0.0, 0.0};

  Etdrk4Stepper stepper(g, cfg.params, cfg.dt, cfg.dealias, cfg.linear_only);
  detail::record_state(*traj, 0.0, v, cfg.record_norms);

  for (std::size_t k = 0; k < steps; ++k) {
    const double linf = stepper.step(v);
    const double t = static_cast<double>(k + 1) * cfg.dt;
    if (!std::isfinite(linf) || linf > cfg.blowup_linf)
      throw blowup_error(t, linf, traj);
    const bool last = (k + 1 == steps);
    if (last || (cfg.record_every != 0 && (k + 1) % cfg.record_every == 0))
      detail::record_state(*traj, t, v, cfg.record_norms);
  }
  return std::move(*traj);
}

}  // namespace kdvbbm
