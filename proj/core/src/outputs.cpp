#include "chemotaxis/outputs.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>

#include "chemotaxis/constants.hpp"
#include "chemotaxis/errors.hpp"

namespace chemotaxis {

std::vector<CurveRow> curve_rows(double beta_lo, double beta_hi, int resolution) {
  if (!(beta_lo >= 0.0)) throw DomainError("curves: beta range must lie in [0, inf)");
  if (!(beta_hi >= beta_lo)) throw DomainError("curves: empty beta range");
  if (resolution < 1) throw DomainError("curves: resolution must be >= 1");

  std::vector<double> betas;
  if (resolution == 1 || beta_hi == beta_lo) {
    betas.push_back(beta_lo);
  } else {
    for (int k = 0; k < resolution; ++k)
      betas.push_back(k == resolution - 1 ? beta_hi : beta_lo + (beta_hi - beta_lo) * k / (resolution - 1));
  }
  for (double landmark : {0.5, 1.0, 2.0, 3.0})
    if (landmark >= beta_lo && landmark <= beta_hi) betas.push_back(landmark);
  std::sort(betas.begin(), betas.end());
  betas.erase(std::unique(betas.begin(), betas.end()), betas.end());

  std::vector<CurveRow> rows;
  rows.reserve(betas.size());
  for (double b : betas) {
    CurveRow row{b, psi(b), theta(b), std::nullopt};
    if (b >= 0.5) row.theta_2beta_minus_1 = theta(2.0 * b - 1.0);
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void emit_curves(std::ostream& os, const std::vector<CurveRow>& rows) {
  os << "beta,psi,theta,theta_2beta_minus_1\n";
  for (const auto& r : rows)
    os << g17(r.beta) << ',' << g17(r.psi) << ',' << g17(r.theta) << ','
       << (r.theta_2beta_minus_1 ? g17(*r.theta_2beta_minus_1) : std::string()) << '\n';
}

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory) {
  os << "t,dt,sup_u,inf_u,mass,l2_u,sup_v,entropy_residual,contraction_p1,contraction_p2,contraction_pinf,"
        "max_ineq_residual,gradient_estimate_residual,signal_consistency,lp_identity_residual,sup_bound_residual\n";
  auto opt = [](const std::optional<double>& x) { return x ? g17(*x) : std::string(); };
  for (const auto& r : trajectory.records)
    os << g17(r.t) << ',' << g17(r.dt) << ',' << g17(r.sup_u) << ',' << g17(r.inf_u) << ',' << g17(r.mass) << ','
       << g17(r.l2_u) << ',' << g17(r.sup_v) << ',' << opt(r.entropy_residual) << ','
       << g17(r.contraction_residuals[0]) << ',' << g17(r.contraction_residuals[1]) << ','
       << g17(r.contraction_residuals[2]) << ',' << g17(r.max_ineq_residual) << ','
       << g17(r.gradient_estimate_residual) << ',' << g17(r.signal_consistency) << ','
       << opt(r.lp_identity_residual) << ',' << opt(r.sup_bound_residual) << '\n';
}

const char* library_version() { return CHEMOLAB_VERSION; }

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace chemotaxis
