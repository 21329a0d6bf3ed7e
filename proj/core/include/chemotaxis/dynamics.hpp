#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "chemotaxis/diagnostics.hpp"
#include "chemotaxis/field_io.hpp"
#include "chemotaxis/grid.hpp"
#include "chemotaxis/model_params.hpp"
#include "chemotaxis/sim_state.hpp"

namespace chemotaxis {

/// Advective face flux F = χ0 φ ∇v with φ = u_face^m / (1 + v_face)^β, so that
/// u_t = Δu − div F + a u − b u^{1+α}. Boundary faces carry no flux.
FaceField chemotactic_flux(const Field& u, const Field& v, const ModelParams& params,
                           FluxScheme scheme = FluxScheme::Upwind);

/// Pointwise a u − b u^{1+α}.
Field reaction(const Field& u, const ModelParams& params);

struct StepRejection {
  enum class Reason { Negativity, NonFinite };
  Reason reason;
  double min_value;
};

/// One IMEX step: (I − dt L_h) u_new = u + dt (−div F + reaction), then
/// v_new from the resolvent. Rejected when u_new has a negative or non-finite entry.
std::variant<SimState, StepRejection> step(const SimState& state, double dt, const ModelParams& params,
                                           const StepperConfig& cfg);

struct DtProposal {
  double dt;
  bool underflow;  ///< dt < cfg.dt_min
};

/// min(cfl / Σ_axis V_max/h, 0.25 / max(a + b(1+α)‖u‖∞^α, ε), 1.5 dt_prev, dt_max),
/// V_max = max_faces |χ0| m max(u_up, ε_u)^{m−1} |∇v| / (1+v_face)^β.
DtProposal adaptive_dt(const SimState& state, const ModelParams& params, const StepperConfig& cfg);

/// State at t = 0 with v from the resolvent. Throws PreconditionError unless
/// u0 is finite with min u0 > 0.
SimState make_initial_state(const Field& u0, const ModelParams& params);

struct RunOptions {
  std::vector<double> snapshot_times;
  EllipticConstantModel c_model = EllipticConstantModel::user(1.0);
  double gradient_p = 2.0;
  double lp_p = 2.0;
};

struct RunOutcome {
  RunStatus status = RunStatus::ReachedFinalTime;
  double t_final = 0.0;
  double peak_sup = 0.0;
  SimState final_state;
  Trajectory trajectory;
  /// Slope of ln‖u‖∞ against t over the last accepted steps.
  double growth_exponent = 0.0;
  /// min u dropped below cfg.extinction_floor at some step.
  bool extinction_observed = false;
  std::vector<Snapshot> snapshots;
};

/// Adaptive IMEX integration to t_final with halve-and-retry on rejection.
/// Stops at the first of blow-up, positivity failure, step underflow, steady
/// state or the final time.
RunOutcome run(const Field& u0, const ModelParams& params, const StepperConfig& cfg, double t_final,
               const RunOptions& options = {});

}  // namespace chemotaxis
