#include "chemotaxis/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chemotaxis/elliptic.hpp"
#include "chemotaxis/errors.hpp"

namespace chemotaxis {

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::ReachedFinalTime: return "ReachedFinalTime";
    case RunStatus::SteadyState: return "SteadyState";
    case RunStatus::BlowUpDetected: return "BlowUpDetected";
    case RunStatus::PositivityFailure: return "PositivityFailure";
    case RunStatus::StepSizeUnderflow: return "StepSizeUnderflow";
  }
  return "?";
}

std::string_view to_string(FluxScheme scheme) { return scheme == FluxScheme::Upwind ? "upwind" : "central"; }

void StepperConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ParameterError("stepper.cfl must lie in (0, 1]");
  if (!(dt_min > 0.0)) throw ParameterError("stepper.dt_min must be > 0");
  if (!(dt_init >= dt_min)) throw ParameterError("stepper.dt_init must be >= stepper.dt_min");
  if (!(dt_max >= dt_init)) throw ParameterError("stepper.dt_max must be >= stepper.dt_init");
  if (!(blowup_cap >= 0.0)) throw ParameterError("stepper.blowup_cap must be >= 0");
  if (!(extinction_floor >= 0.0)) throw ParameterError("stepper.extinction_floor must be >= 0");
  if (!(steady_tol >= 0.0)) throw ParameterError("stepper.steady_tol must be >= 0");
  if (!(u_floor > 0.0)) throw ParameterError("stepper.u_floor must be > 0");
  if (steady_window < 1) throw ParameterError("stepper.steady_window must be >= 1");
  if (max_halvings < 0) throw ParameterError("stepper.max_halvings must be >= 0");
}

namespace {

double power(double x, double e) { return e == 1.0 ? x : std::pow(x, e); }

/// Visits every interior face: f(axis, face index, left cell, right cell).
template <class F>
void for_interior_faces(const Grid& g, F&& f) {
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 1; i < g.nx(); ++i)
      f(0, static_cast<std::size_t>(j) * static_cast<std::size_t>(g.nx() + 1) + static_cast<std::size_t>(i),
        g.index(i - 1, j), g.index(i, j));
  if (g.dim() == 2)
    for (int j = 1; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) f(1, g.index(i, j), g.index(i, j - 1), g.index(i, j));
}

}  // namespace

FaceField chemotactic_flux(const Field& u, const Field& v, const ModelParams& params, FluxScheme scheme) {
  const Grid& g = u.grid();
  FaceField flux(g);
  if (params.chi0 == 0.0) return flux;
  const FaceField grad = gradient_faces(v);
  for_interior_faces(g, [&](int axis, std::size_t face, std::size_t left, std::size_t right) {
    const double gv = grad.component(axis)[face];
    if (gv == 0.0) return;
    const double v_face = 0.5 * (v[left] + v[right]);
    double u_m;
    if (scheme == FluxScheme::Upwind)
      u_m = power(params.chi0 * gv > 0.0 ? u[left] : u[right], params.m);
    else
      u_m = 0.5 * (power(u[left], params.m) + power(u[right], params.m));
    const double damping = params.beta == 0.0 ? 1.0 : std::pow(1.0 + v_face, -params.beta);
    flux.component(axis)[face] = params.chi0 * u_m * damping * gv;
  });
  return flux;
}

Field reaction(const Field& u, const ModelParams& params) {
  Field out(u.grid());
  if (params.minimal_logistic()) return out;
  for (std::size_t k = 0; k < u.size(); ++k)
    out[k] = params.a * u[k] - params.b * u[k] * power(u[k], params.alpha);
  return out;
}

std::variant<SimState, StepRejection> step(const SimState& state, double dt, const ModelParams& params,
                                           const StepperConfig& cfg) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw PreconditionError("step: dt must be positive and finite");
  Field rhs = state.u;
  if (params.chi0 != 0.0) {
    Field div = divergence(chemotactic_flux(state.u, state.v, params, cfg.scheme));
    div *= -dt;
    rhs += div;
  }
  if (!params.minimal_logistic()) {
    Field r = reaction(state.u, params);
    r *= dt;
    rhs += r;
  }
  Field u_new = solve_shifted(rhs, 1.0, dt);
  if (!u_new.all_finite())
    return StepRejection{StepRejection::Reason::NonFinite, std::numeric_limits<double>::quiet_NaN()};
  const double lo = u_new.min();
  if (lo < 0.0) return StepRejection{StepRejection::Reason::Negativity, lo};
  Field v_new = signal_from_density(u_new, params);
  return SimState{state.t + dt, std::move(u_new), std::move(v_new), dt, state.accepted_steps + 1,
                  state.rejected_steps};
}

DtProposal adaptive_dt(const SimState& state, const ModelParams& params, const StepperConfig& cfg) {
  const Grid& g = state.u.grid();
  const double inf = std::numeric_limits<double>::infinity();
  double dt = cfg.dt_max;
  if (state.dt_last > 0.0) dt = std::min(dt, 1.5 * state.dt_last);
  else dt = std::min(dt, cfg.dt_init);

  if (params.chi0 != 0.0) {
    std::array<double, 2> v_max{0.0, 0.0};
    const FaceField grad = gradient_faces(state.v);
    for_interior_faces(g, [&](int axis, std::size_t face, std::size_t left, std::size_t right) {
      const double gv = grad.component(axis)[face];
      if (gv == 0.0) return;
      const double u_up = params.chi0 * gv > 0.0 ? state.u[left] : state.u[right];
      const double v_face = 0.5 * (state.v[left] + state.v[right]);
      const double speed = std::abs(params.chi0) * params.m * power(std::max(u_up, cfg.u_floor), params.m - 1.0) *
                           std::abs(gv) * (params.beta == 0.0 ? 1.0 : std::pow(1.0 + v_face, -params.beta));
      auto& slot = v_max[static_cast<std::size_t>(axis)];
      slot = std::max(slot, speed);
    });
    const double rate = v_max[0] / g.hx() + (g.dim() == 2 ? v_max[1] / g.hy() : 0.0);
    if (rate > 0.0) dt = std::min(dt, cfg.cfl / rate);
  }
  if (!params.minimal_logistic()) {
    const double umax = state.u.max();
    const double stiffness = params.a + params.b * (1.0 + params.alpha) * power(umax, params.alpha);
    dt = std::min(dt, 0.25 / std::max(stiffness, std::numeric_limits<double>::min()));
  }
  if (!(dt < inf)) dt = cfg.dt_max;
  return {dt, dt < cfg.dt_min};
}

SimState make_initial_state(const Field& u0, const ModelParams& params) {
  if (!u0.all_finite()) throw PreconditionError("initial density must be finite");
  if (!(u0.min() > 0.0)) throw PreconditionError("initial density must satisfy min u0 > 0");
  return SimState{0.0, u0, signal_from_density(u0, params), 0.0, 0, 0};
}

namespace {

double growth_slope(const std::vector<DiagnosticsRecord>& records, std::size_t window) {
  const std::size_t n = std::min(window, records.size());
  if (n < 2) return 0.0;
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (std::size_t k = records.size() - n; k < records.size(); ++k) {
    const double t = records[k].t;
    const double y = std::log(std::max(records[k].sup_u, std::numeric_limits<double>::min()));
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * stt - st * st;
  return denom > 0.0 ? (dn * sty - st * sy) / denom : 0.0;
}

}  // namespace

RunOutcome run(const Field& u0, const ModelParams& params, const StepperConfig& cfg, double t_final,
               const RunOptions& options) {
  params.validate();
  cfg.validate();
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw PreconditionError("run: t_final must be positive");
  if (params.dim != u0.grid().dim()) throw PreconditionError("run: parameter dimension does not match the grid");

  SimState state = make_initial_state(u0, params);
  const double sup0 = u0.max();
  const double cap = cfg.blowup_cap > 0.0 ? cfg.blowup_cap : 1e6 * std::max(1.0, sup0);

  DiagnosticsContext ctx{params, options.c_model, options.gradient_p, options.lp_p, sup0, cfg.scheme};
  Trajectory traj;
  traj.blowup_cap = cap;
  traj.initial_mass = mass(u0);
  traj.initial_sup = sup0;
  traj.measure = u0.grid().measure();
  traj.dim = u0.grid().dim();
  traj.records.push_back(evaluate_state(state, ctx));

  std::vector<double> snap_times = options.snapshot_times;
  std::sort(snap_times.begin(), snap_times.end());
  std::vector<Snapshot> snapshots;
  std::size_t next_snap = 0;
  while (next_snap < snap_times.size() && snap_times[next_snap] <= 0.0) {
    snapshots.push_back({0.0, state.u});
    ++next_snap;
  }

  std::vector<SimState> window;
  window.push_back(state);
  double peak = sup0;
  bool extinct = sup0 < cfg.extinction_floor;
  int quiet_steps = 0;
  RunStatus status = RunStatus::ReachedFinalTime;
  const double t_eps = 1e-12 * std::max(1.0, t_final);

  while (state.t < t_final - t_eps) {
    DtProposal proposal = adaptive_dt(state, params, cfg);
    if (proposal.underflow) {
      status = RunStatus::StepSizeUnderflow;
      break;
    }
    double dt = std::min(proposal.dt, t_final - state.t);
    if (next_snap < snap_times.size()) dt = std::min(dt, snap_times[next_snap] - state.t);

    std::optional<SimState> accepted;
    int halvings = 0;
    std::size_t rejected = 0;
    while (true) {
      auto result = step(state, dt, params, cfg);
      if (auto* s = std::get_if<SimState>(&result)) {
        accepted = std::move(*s);
        break;
      }
      ++rejected;
      if (++halvings > cfg.max_halvings) {
        status = RunStatus::PositivityFailure;
        break;
      }
      dt *= 0.5;
      if (dt < cfg.dt_min) {
        status = RunStatus::StepSizeUnderflow;
        break;
      }
    }
    state.rejected_steps += rejected;
    if (!accepted) break;

    const double change = [&] {
      double d = 0.0;
      for (std::size_t k = 0; k < state.u.size(); ++k) d = std::max(d, std::abs(accepted->u[k] - state.u[k]));
      return d / (dt * std::max(accepted->u.max(), std::numeric_limits<double>::min()));
    }();
    accepted->rejected_steps = state.rejected_steps;
    state = std::move(*accepted);

    DiagnosticsRecord record = evaluate_state(state, ctx);
    window.push_back(state);
    if (window.size() > 3) window.erase(window.begin());
    if (window.size() == 3) record.lp_identity_residual = check_lp_identity(window, options.lp_p, params, cfg.scheme);
    traj.records.push_back(record);

    peak = std::max(peak, record.sup_u);
    if (record.inf_u < cfg.extinction_floor) extinct = true;
    while (next_snap < snap_times.size() && snap_times[next_snap] <= state.t + t_eps) {
      snapshots.push_back({state.t, state.u});
      ++next_snap;
    }

    if (record.sup_u >= cap) {
      status = RunStatus::BlowUpDetected;
      break;
    }
    quiet_steps = change < cfg.steady_tol ? quiet_steps + 1 : 0;
    if (quiet_steps >= cfg.steady_window) {
      status = RunStatus::SteadyState;
      break;
    }
  }

  traj.status = status;
  const double growth = growth_slope(traj.records, 10);
  return RunOutcome{status, state.t, peak, std::move(state), std::move(traj), growth, extinct, std::move(snapshots)};
}

}  // namespace chemotaxis
