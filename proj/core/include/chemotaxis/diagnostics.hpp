#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chemotaxis/constants.hpp"
#include "chemotaxis/model_params.hpp"
#include "chemotaxis/sim_state.hpp"

namespace chemotaxis {

struct RegimeVerdict;

/// Per-step observables and inequality residuals. Residuals are signed:
/// a nonpositive value means the inequality holds.
struct DiagnosticsRecord {
  double t = 0.0;
  double dt = 0.0;
  double sup_u = 0.0;
  double inf_u = 0.0;
  double mass = 0.0;
  double l2_u = 0.0;
  double sup_v = 0.0;
  /// max β/(1+v)^{1+β} − Ψ_β/v; empty when β = 0 or v has a zero.
  std::optional<double> entropy_residual;
  /// (‖v‖_p − (ν/μ)‖u^γ‖_p) / ((ν/μ)‖u^γ‖_p) for p = 1, 2, ∞.
  std::array<double, 3> contraction_residuals{};
  /// (μ max v − ν (max u)^γ) / (ν (max u)^γ).
  double max_ineq_residual = 0.0;
  /// (∫|∇v|^{2p}/(1+v)^{(1+β)p} − Θ_β^p M* ∫u^{γp}) / (Θ_β^p M* ∫u^{γp}).
  double gradient_estimate_residual = 0.0;
  /// ‖(μI − L_h)v − νu^γ‖∞ / ‖νu^γ‖∞.
  double signal_consistency = 0.0;
  /// Relative mismatch in the L^p identity at the previous step (needs a 3-state window).
  std::optional<double> lp_identity_residual;
  /// ‖u‖∞ − bound for χ0 ≤ 0 with a logistic pair (a, b > 0 or a = b = 0).
  std::optional<double> sup_bound_residual;
};

struct DiagnosticsContext {
  ModelParams params;
  EllipticConstantModel c_model = EllipticConstantModel::user(1.0);
  double gradient_p = 2.0;
  double lp_p = 2.0;
  double sup_u0 = 0.0;
  FluxScheme scheme = FluxScheme::Upwind;
};

/// Evaluates every pointwise residual of a single state (lp_identity excluded).
DiagnosticsRecord evaluate_state(const SimState& state, const DiagnosticsContext& ctx);

/// max over cells of β/(1+v)^{1+β} − Ψ_β/v. Throws PreconditionError if v ≤ 0
/// somewhere and DomainError if β ≤ 0.
double check_entropy(double beta, const Field& v);

/// Central-difference estimate of (1/p) d/dt ∫u^p at the middle of three
/// consecutive states, minus the face quadrature of
///   −(p−1)∫u^{p−2}|∇u|² + χ0(p−1)∫u^{p−2} φ ∇u·∇v + a∫u^p − b∫u^{p+α},
/// relative to the sum of the magnitudes of those terms. Throws
/// PreconditionError unless exactly three states with increasing t are given.
double check_lp_identity(std::span<const SimState> window, double p, const ModelParams& params,
                         FluxScheme scheme = FluxScheme::Upwind);

/// Everything check_trajectory needs from a completed run.
struct Trajectory {
  std::vector<DiagnosticsRecord> records;
  RunStatus status = RunStatus::ReachedFinalTime;
  double blowup_cap = 0.0;
  double initial_mass = 0.0;
  double initial_sup = 0.0;
  double measure = 0.0;
  int dim = 1;
};

struct CheckTolerances {
  double entropy = 1e-12;
  double contraction = 1e-10;
  double max_ineq = 1e-10;
  double gradient_estimate = 1e-2;
  double signal_consistency = 1e-10;
  double sup_bound = 1e-6;
  double nonincreasing = 1e-8;
  double mass_drift = 1e-10;
  double mass_bound = 1e-8;
  double lp_identity = 1e-2;
};

struct CheckEntry {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool gating = true;
  bool passed = true;
};

struct CheckReport {
  std::vector<CheckEntry> entries;

  /// True when every gating entry passed.
  bool passed() const;
  const CheckEntry* find(std::string_view name) const;
};

/// Asserts the trajectory-level consequences of the theory that apply to
/// `params`: mass identity or bound, sup-norm bound and nonincreasing maximum
/// for χ0 ≤ 0, no blow-up when `verdict` guarantees boundedness, and the
/// worst per-step residual of every pointwise inequality.
CheckReport check_trajectory(const Trajectory& trajectory, const ModelParams& params, const RegimeVerdict& verdict,
                             const CheckTolerances& tol = {});

void write_report_csv(std::ostream& os, const CheckReport& report);
void write_report_text(std::ostream& os, const CheckReport& report);

}  // namespace chemotaxis
