#include "chemotaxis/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "chemotaxis/dynamics.hpp"
#include "chemotaxis/errors.hpp"
#include "chemotaxis/regime.hpp"

namespace chemotaxis {

namespace {

constexpr double kTiny = std::numeric_limits<double>::min();

double power(double x, double e) { return e == 1.0 ? x : std::pow(x, e); }

Field pointwise_power(const Field& f, double e) {
  Field out(f.grid());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = power(f[k], e);
  return out;
}

double relative(double value, double reference) { return value / std::max(std::abs(reference), kTiny); }

/// ∫|∇v|^{2p} / (1+v)^{(1+β)p}: face quadrature in 1D, cell-centred averages of face gradients in 2D.
double weighted_gradient_integral(const Field& v, double p, double beta) {
  const Grid& g = v.grid();
  const FaceField grad = gradient_faces(v);
  double sum = 0.0;
  if (g.dim() == 1) {
    for (int i = 1; i < g.nx(); ++i) {
      const double gv = grad.x(i);
      const double vf = 0.5 * (v.at(i - 1) + v.at(i));
      sum += std::pow(gv * gv, p) * std::pow(1.0 + vf, -(1.0 + beta) * p);
    }
    return sum * g.cell_volume();
  }
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double gx = 0.5 * (grad.x(i, j) + grad.x(i + 1, j));
      const double gy = 0.5 * (grad.y(i, j) + (j + 1 < g.ny() ? grad.y(i, j + 1) : 0.0));
      sum += std::pow(gx * gx + gy * gy, p) * std::pow(1.0 + v.at(i, j), -(1.0 + beta) * p);
    }
  return sum * g.cell_volume();
}

}  // namespace

double check_entropy(double beta, const Field& v) {
  if (!(beta > 0.0)) throw DomainError("check_entropy: beta must be > 0");
  const double ps = psi(beta);
  double worst = -std::numeric_limits<double>::infinity();
  for (double x : v.values()) {
    if (!(x > 0.0)) throw PreconditionError("check_entropy: v must be positive");
    worst = std::max(worst, beta * std::pow(1.0 + x, -(1.0 + beta)) - ps / x);
  }
  return worst;
}

DiagnosticsRecord evaluate_state(const SimState& state, const DiagnosticsContext& ctx) {
  const ModelParams& p = ctx.params;
  const Field& u = state.u;
  const Field& v = state.v;
  DiagnosticsRecord r;
  r.t = state.t;
  r.dt = state.dt_last;
  r.sup_u = u.max();
  r.inf_u = u.min();
  r.mass = mass(u);
  r.l2_u = lp_norm(u, 2.0);
  r.sup_v = v.max();

  if (p.beta > 0.0 && v.min() > 0.0) r.entropy_residual = check_entropy(p.beta, v);

  const Field ug = pointwise_power(u, p.gamma);
  const double ratio = p.nu / p.mu;
  const std::array<double, 3> orders{1.0, 2.0, kInfinityNorm};
  for (std::size_t k = 0; k < orders.size(); ++k) {
    const double bound = ratio * lp_norm(ug, orders[k]);
    r.contraction_residuals[k] = relative(lp_norm(v, orders[k]) - bound, bound);
  }

  const double production_max = p.nu * power(r.sup_u, p.gamma);
  r.max_ineq_residual = relative(p.mu * r.sup_v - production_max, production_max);

  const double gp = ctx.gradient_p;
  const double lhs = weighted_gradient_integral(v, gp, p.beta);
  const double rhs = std::pow(theta(p.beta), gp) * m_star(u.grid().dim(), gp, p.mu, p.nu, ctx.c_model) *
                     std::pow(lp_norm(u, p.gamma * gp), p.gamma * gp);
  r.gradient_estimate_residual = relative(lhs - rhs, rhs);

  Field operator_v = p.mu * Field(v);
  operator_v -= laplacian_neumann(v);
  Field source = p.nu * Field(ug);
  operator_v -= source;
  r.signal_consistency = relative(lp_norm(operator_v, kInfinityNorm), lp_norm(source, kInfinityNorm));

  if (p.chi0 <= 0.0) {
    if (p.positive_logistic())
      r.sup_bound_residual = r.sup_u - std::max(ctx.sup_u0, p.carrying_capacity());
    else if (p.minimal_logistic())
      r.sup_bound_residual = r.sup_u - ctx.sup_u0;
  }
  return r;
}

double check_lp_identity(std::span<const SimState> window, double p, const ModelParams& params, FluxScheme scheme) {
  if (window.size() != 3) throw PreconditionError("check_lp_identity: needs exactly three consecutive states");
  if (!(window[0].t < window[1].t && window[1].t < window[2].t))
    throw PreconditionError("check_lp_identity: states must have increasing times");
  if (!(p > 1.0)) throw DomainError("check_lp_identity: p must be > 1");

  auto power_integral = [](const Field& u, double e) {
    double s = 0.0;
    for (double x : u.values()) s += power(x, e);
    return s * u.grid().cell_volume();
  };
  const double lhs =
      (power_integral(window[2].u, p) - power_integral(window[0].u, p)) / (p * (window[2].t - window[0].t));

  const SimState& mid = window[1];
  const FaceField grad_u = gradient_faces(mid.u);
  FaceField weight = face_average(mid.u);
  for (int axis = 0; axis < mid.u.grid().dim(); ++axis)
    for (double& w : weight.component(axis)) w = p == 2.0 ? 1.0 : power(w, p - 2.0);
  const FaceField weighted_grad = face_map(grad_u, weight, [](double gu, double w) { return gu * w; });

  const double dissipation = -(p - 1.0) * face_inner(weighted_grad, grad_u);
  const double cross = (p - 1.0) * face_inner(weighted_grad, chemotactic_flux(mid.u, mid.v, params, scheme));
  const double growth = params.a * power_integral(mid.u, p);
  const double damping = params.b * power_integral(mid.u, p + params.alpha);
  const double rhs = dissipation + cross + growth - damping;
  const double scale = std::abs(dissipation) + std::abs(cross) + std::abs(growth) + std::abs(damping);
  return (lhs - rhs) / std::max(scale, kTiny);
}

// ---------------------------------------------------------------- trajectories

bool CheckReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return !e.gating || e.passed; });
}

const CheckEntry* CheckReport::find(std::string_view name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

CheckReport check_trajectory(const Trajectory& traj, const ModelParams& params, const RegimeVerdict& verdict,
                             const CheckTolerances& tol) {
  CheckReport report;
  auto add = [&](std::string name, double residual, double tolerance, bool gating) {
    report.entries.push_back({std::move(name), residual, tolerance, gating, residual <= tolerance});
  };
  auto worst = [&](auto&& get) {
    double w = -std::numeric_limits<double>::infinity();
    for (const auto& r : traj.records) w = std::max(w, get(r));
    return w;
  };
  if (traj.records.empty()) {
    report.entries.push_back({"trajectory_nonempty", 1.0, 0.0, true, false});
    return report;
  }

  const bool completed = traj.status == RunStatus::ReachedFinalTime || traj.status == RunStatus::SteadyState;
  report.entries.push_back({"run_completed", completed ? 0.0 : 1.0, 0.0, true, completed});

  add("signal_consistency", worst([](const auto& r) { return r.signal_consistency; }), tol.signal_consistency, true);
  static constexpr std::array<const char*, 3> kContraction{"contraction_p1", "contraction_p2", "contraction_pinf"};
  for (std::size_t k = 0; k < 3; ++k)
    add(kContraction[k], worst([k](const auto& r) { return r.contraction_residuals[k]; }), tol.contraction, true);
  add("max_inequality", worst([](const auto& r) { return r.max_ineq_residual; }), tol.max_ineq, true);

  if (std::any_of(traj.records.begin(), traj.records.end(), [](const auto& r) { return r.entropy_residual; }))
    add("entropy", worst([](const auto& r) { return r.entropy_residual.value_or(-1.0); }), tol.entropy, true);

  if (std::all_of(traj.records.begin(), traj.records.end(), [](const auto& r) { return r.inf_u > 0.0; }))
    add("gradient_estimate", worst([](const auto& r) { return r.gradient_estimate_residual; }), tol.gradient_estimate,
        traj.dim == 1);

  if (std::any_of(traj.records.begin(), traj.records.end(), [](const auto& r) { return r.lp_identity_residual; }))
    add("lp_identity", worst([](const auto& r) { return std::abs(r.lp_identity_residual.value_or(0.0)); }),
        tol.lp_identity, false);

  if (params.minimal_logistic()) {
    const double m0 = traj.initial_mass;
    add("mass_identity", worst([m0](const auto& r) { return std::abs(r.mass - m0) / std::max(m0, kTiny); }),
        tol.mass_drift, true);
  } else if (params.positive_logistic()) {
    const double m_cap = std::max(traj.initial_mass, params.carrying_capacity() * traj.measure);
    add("mass_bound", worst([m_cap](const auto& r) { return r.mass - m_cap; }), tol.mass_bound, true);
  }

  if (params.chi0 <= 0.0 && (params.minimal_logistic() || params.positive_logistic())) {
    add("sup_bound", worst([](const auto& r) { return r.sup_bound_residual.value_or(0.0); }), tol.sup_bound, true);
    const double u_star = params.positive_logistic() ? params.carrying_capacity() : 0.0;
    double rise = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < traj.records.size(); ++k)
      if (traj.records[k - 1].sup_u > u_star)
        rise = std::max(rise, traj.records[k].sup_u - traj.records[k - 1].sup_u);
    if (std::isfinite(rise)) add("nonincreasing_max", rise, tol.nonincreasing, true);
  }

  if (verdict.boundedness == Boundedness::Guaranteed) {
    const double peak = worst([](const auto& r) { return r.sup_u; });
    const bool ok = traj.status != RunStatus::BlowUpDetected;
    report.entries.push_back({"no_blowup", peak / traj.blowup_cap - 1.0, 0.0, true, ok});
  }

  add("min_density", -worst([](const auto& r) { return -r.inf_u; }), 0.0, false);
  report.entries.back().passed = true;
  return report;
}

namespace {

std::string_view verdict_word(const CheckEntry& e) {
  if (!e.gating) return "REPORT-ONLY";
  return e.passed ? "PASS" : "FAIL";
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

}  // namespace

void write_report_csv(std::ostream& os, const CheckReport& report) {
  os << "check,residual,tolerance,gating,result\n";
  for (const auto& e : report.entries)
    os << e.name << ',' << format_real(e.residual) << ',' << format_real(e.tolerance) << ',' << (e.gating ? 1 : 0)
       << ',' << verdict_word(e) << '\n';
}

void write_report_text(std::ostream& os, const CheckReport& report) {
  for (const auto& e : report.entries) {
    char line[160];
    std::snprintf(line, sizeof line, "%-12s %-20s residual %13.6e  tolerance %.1e\n",
                  std::string(verdict_word(e)).c_str(), e.name.c_str(), e.residual, e.tolerance);
    os << line;
  }
  os << (report.passed() ? "all gating checks passed\n" : "gating checks FAILED\n");
}

}  // namespace chemotaxis
