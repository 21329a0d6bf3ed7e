#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "chemotaxis/constants.hpp"
#include "chemotaxis/diagnostics.hpp"
#include "chemotaxis/dynamics.hpp"
#include "chemotaxis/elliptic.hpp"
#include "chemotaxis/outputs.hpp"
#include "chemotaxis/regime.hpp"
#include "chemotaxis/scenarios.hpp"
#include "helpers.hpp"

using namespace chemotaxis;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    passed = false;
    if (detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> body;
};

Field cosine(const Grid& g, double level, double amp) {
  const double length = g.domain().lengths[0];
  return Field::from_function(g, [=](double x, double) { return level + amp * std::cos(kPi * x / length); });
}

// ---------------------------------------------------------------- 1

Outcome constants_suite() {
  Outcome o;
  o.require(psi(0.0) == 0.0, "psi(0) != 0");
  o.require(std::abs(psi(1e4) - std::exp(-1.0)) < 1e-4, "psi(1e4) not within 1e-4 of 1/e");
  o.require(theta(1e-6) > 1.0 - 1e-5, "theta(1e-6) <= 1 - 1e-5");
  o.require(testing::ulp_distance(psi(1.0), 0.25) <= 4.0, "psi(1) not 0.25 to 4 ulp");
  o.require(testing::ulp_distance(theta(1.0), 0.25) <= 4.0, "theta(1) not 0.25 to 4 ulp");
  double prev_psi = psi(0.0), prev_theta = theta(0.0);
  for (int k = 1; k <= 1000; ++k) {
    const double beta = 20.0 * k / 1000.0;
    const double p = psi(beta), t = theta(beta);
    o.require(p > prev_psi, "psi not strictly increasing at beta=" + sci(beta));
    o.require(t < prev_theta, "theta not strictly decreasing at beta=" + sci(beta));
    prev_psi = p;
    prev_theta = t;
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("psi(1e4)-1/e = ") + sci(psi(1e4) - std::exp(-1.0));
  return o;
}

// ---------------------------------------------------------------- 2

Outcome entropy_inequality() {
  Outcome o;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> expo(-3.0, 3.0);
  const Grid g = Grid::line(1.0, 100000);
  double worst = -1e300, worst_eq = 0.0;
  for (double beta : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    Field v(g);
    for (double& x : v.values()) x = std::pow(10.0, expo(rng));
    const double r = check_entropy(beta, v);
    worst = std::max(worst, r);
    o.require(r <= 1e-12, "beta=" + sci(beta) + " residual " + sci(r));
    const double eq = check_entropy(beta, Field(Grid::line(1.0, 4), 1.0 / beta));
    worst_eq = std::max(worst_eq, std::abs(eq));
    o.require(std::abs(eq) <= 1e-10, "no equality at v=1/beta for beta=" + sci(beta));
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("worst residual ") + sci(worst) + ", equality gap " +
              sci(worst_eq);
  return o;
}

// ---------------------------------------------------------------- 3

Outcome resolvent_contraction() {
  Outcome o;
  std::mt19937_64 rng(23);
  const Grid g = Grid::line(1.0, 256);
  double worst = -1e300;
  for (double gamma : {0.5, 1.0, 2.0}) {
    ModelParams p;
    p.gamma = gamma;
    p.mu = 2.0;
    p.nu = 0.5;
    for (int trial = 0; trial < 100; ++trial) {
      Field u = testing::random_field(g, rng, 0.0, 3.0);
      if (trial % 10 == 0) u.at(trial % 256) = 0.0;
      const Field v = signal_from_density(u, p);
      Field source(g);
      for (std::size_t k = 0; k < u.size(); ++k) source[k] = std::pow(u[k], gamma);
      for (double q : {1.0, 2.0, kInfinityNorm}) {
        const double bound = p.nu / p.mu * lp_norm(source, q);
        const double rel = (lp_norm(v, q) - bound) / bound;
        worst = std::max(worst, rel);
        o.require(rel <= 1e-10, "gamma=" + sci(gamma) + " p=" + sci(q) + " residual " + sci(rel));
      }
    }
  }
  double eig_err = 0.0;
  for (int k : {0, 1, 5, 40, 255}) {
    const double h = g.hx();
    const double lambda = 4.0 / (h * h) * std::pow(std::sin(k * kPi * h / 2.0), 2);
    const Field e = Field::from_function(g, [k](double x, double) { return std::cos(k * kPi * x); });
    const Field v = resolvent_apply(e, 1.5);
    for (std::size_t i = 0; i < e.size(); ++i) eig_err = std::max(eig_err, std::abs(v[i] - e[i] / (1.5 + lambda)));
  }
  o.require(eig_err <= 1e-12, "eigenfunction error " + sci(eig_err));
  const Grid small = Grid::line(1.0, 64);
  const Field f = testing::random_field(small, rng, 0.0, 2.0);
  const auto dense = testing::dense_solve(testing::shifted_laplacian_matrix(small, 0.7),
                                          std::vector<double>(f.values().begin(), f.values().end()));
  const Field fast = resolvent_apply(f, 0.7);
  double dense_err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    dense_err = std::max(dense_err, std::abs(fast[i] - dense[i]));
    scale = std::max(scale, std::abs(dense[i]));
  }
  o.require(dense_err <= 1e-10 * scale, "dense oracle mismatch " + sci(dense_err));
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("worst contraction ") + sci(worst) + ", eigen " +
              sci(eig_err) + ", dense " + sci(dense_err);
  return o;
}

// ---------------------------------------------------------------- 4

Outcome gradient_estimate() {
  Outcome o;
  std::mt19937_64 rng(31);
  const Grid g = Grid::line(1.0, 512);
  double worst = -1e300;
  for (int trial = 0; trial < 50; ++trial) {
    const Field u = trial % 2 == 0 ? testing::smooth_positive(g, rng) : testing::random_field(g, rng, 0.05, 3.0);
    for (double beta : {0.0, 1.0, 2.0}) {
      ModelParams p;
      p.beta = beta;
      const SimState s{0.0, u, signal_from_density(u, p)};
      for (double q : {2.0, 3.0}) {
        DiagnosticsContext ctx;
        ctx.params = p;
        ctx.gradient_p = q;
        const double r = evaluate_state(s, ctx).gradient_estimate_residual;
        worst = std::max(worst, r);
        o.require(r <= 1e-2, "beta=" + sci(beta) + " p=" + sci(q) + " residual " + sci(r));
      }
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("worst relative residual ") + std::to_string(worst);
  return o;
}

// ---------------------------------------------------------------- 5

Outcome mass_conservation() {
  Outcome o;
  const Grid g = Grid::line(1.0, 256);
  const Field u0 = cosine(g, 1.0, 0.5);
  StepperConfig cfg;
  for (double chi0 : {-2.0, 0.0, 2.0}) {
    ModelParams p;
    p.chi0 = chi0;
    p.beta = 1.0;
    SimState s = make_initial_state(u0, p);
    const double m0 = mass(s.u);
    double drift = 0.0;
    for (int k = 0; k < 10000; ++k) {
      auto next = step(s, 1e-4, p, cfg);
      if (!std::holds_alternative<SimState>(next)) {
        o.require(false, "step rejected for chi0=" + sci(chi0));
        break;
      }
      s = std::get<SimState>(std::move(next));
      drift = std::max(drift, std::abs(mass(s.u) - m0) / m0);
    }
    o.require(drift <= 1e-10, "chi0=" + sci(chi0) + " drift " + sci(drift));
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("chi0=") + sci(chi0) + " drift " + sci(drift);
  }
  return o;
}

// ---------------------------------------------------------------- 6

Outcome negative_sensitivity_bound() {
  Outcome o;
  const ModelParams p = make_params({{"chi0", "-1"}, {"a", "1"}, {"b", "1"}}, 1);
  const Field u0 = cosine(Grid::line(1.0, 256), 1.5, 0.3);
  const RunOutcome out = run(u0, p, StepperConfig{}, 20.0);
  const double bound = std::max(u0.max(), 1.0) + 1e-6;
  double peak = 0.0, rise = -1e300;
  const auto& rec = out.trajectory.records;
  for (std::size_t k = 0; k < rec.size(); ++k) {
    peak = std::max(peak, rec[k].sup_u);
    if (k > 0) rise = std::max(rise, rec[k].sup_u - rec[k - 1].sup_u);
  }
  o.require(out.status == RunStatus::ReachedFinalTime || out.status == RunStatus::SteadyState,
            "run ended with " + std::string(to_string(out.status)));
  o.require(peak <= bound, "sup " + sci(peak) + " exceeds " + sci(bound));
  o.require(rise <= 1e-8, "per-step increase " + sci(rise));
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("peak ") + sci(peak) + ", largest step increase " +
              sci(rise) + ", steps " + std::to_string(rec.size());
  return o;
}

// ---------------------------------------------------------------- 7

Outcome equilibria() {
  Outcome o;
  const std::vector<std::array<const char*, 3>> triples = {{"1", "1", "1"}, {"2", "0.5", "2"}, {"0.3", "1.2", "0.5"}};
  for (const auto& [a, b, alpha] : triples) {
    const Scenario s = equilibrium_scenario(a, b, alpha);
    const RunOutcome out = run(s.u0, s.params, s.stepper, s.t_final);
    const double u_star = std::pow(s.params.a / s.params.b, 1.0 / s.params.alpha);
    const double v_star = s.params.nu / s.params.mu * std::pow(s.params.a / s.params.b, s.params.gamma / s.params.alpha);
    double du = 0.0, dv = 0.0;
    for (std::size_t k = 0; k < s.u0.size(); ++k) {
      du = std::max(du, std::abs(out.final_state.u[k] - u_star));
      dv = std::max(dv, std::abs(out.final_state.v[k] - v_star));
    }
    const std::string tag = std::string("(") + a + "," + b + "," + alpha + ")";
    o.require(out.status == RunStatus::SteadyState, tag + " status " + std::string(to_string(out.status)));
    o.require(du <= 1e-12 && dv <= 1e-12, tag + " du " + sci(du) + " dv " + sci(dv));
    o.detail += (o.detail.empty() ? "" : "; ") + tag + " du " + sci(du) + " dv " + sci(dv);
  }
  return o;
}

// ---------------------------------------------------------------- 8

double heat_identity_residual(int cells, double dt) {
  const Scenario s = heat_scenario(cells, 8.0, dt, 1.0);
  std::vector<SimState> window{make_initial_state(s.u0, s.params)};
  const int skip = static_cast<int>(std::lround(0.1 / dt));
  for (int k = 0; k < skip + 2; ++k) {
    window.push_back(std::get<SimState>(step(window.back(), dt, s.params, s.stepper)));
    if (window.size() > 3) window.erase(window.begin());
  }
  return std::abs(check_lp_identity(window, 2.0, s.params));
}

Outcome heat_calibration() {
  Outcome o;
  const int n = 128;
  const double length = 8.0, dt = 1e-3;
  const Scenario s = heat_scenario(n, length, dt, 1.0);
  const RunOutcome out = run(s.u0, s.params, s.stepper, s.t_final);
  const Grid& g = s.u0.grid();
  auto amplitude = [&](const Field& u) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += (u.at(i) - 1.0) * std::cos(kPi * g.center(0, i) / length);
    return acc * 2.0 / n;
  };
  const double h = length / n;
  const double lambda = 4.0 / (h * h) * std::pow(std::sin(kPi * h / (2.0 * length)), 2);
  const double rate = -std::log(amplitude(out.final_state.u) / amplitude(s.u0)) / out.t_final;
  const double rel = std::abs(rate - lambda) / lambda;
  o.require(rel <= 1e-4, "decay rate off by " + sci(rel));
  const double coarse = heat_identity_residual(128, 2e-3);
  const double fine = heat_identity_residual(256, 1e-3);
  const double order = std::log2(coarse / fine);
  o.require(order >= 0.9, "identity residual order " + sci(order));
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("rate error ") + sci(rel) + ", identity residual " +
              sci(coarse) + " -> " + sci(fine) + " (order " + sci(order) + ")";
  return o;
}

// ---------------------------------------------------------------- 9

Outcome classifier_truth_table() {
  Outcome o;
  const auto c1 = EllipticConstantModel::user(1.0);
  using B = Boundedness;
  using GE = GlobalExistence;
  struct Row {
    ModelParams p;
    B b;
    GE g;
    std::set<Rule> rules;
  };
  const std::vector<Row> rows = {
      // the four documented examples
      {make_params({{"chi0", "-1"}, {"a", "1"}, {"b", "1"}}, 1), B::Guaranteed, GE::Guaranteed, {Rule::T1_1, Rule::T3_iii}},
      {make_params({{"chi0", "5"}, {"m", "0.5"}, {"beta", "1.2"}}, 1), B::Guaranteed, GE::NotGuaranteed, {Rule::T2_1}},
      {make_params({{"chi0", "100"}, {"alpha", "2"}, {"a", "1"}, {"b", "1"}}, 2), B::Guaranteed, GE::Guaranteed, {Rule::T3_i}},
      {make_params({{"chi0", "1000"}, {"a", "1"}, {"b", "0.001"}}, 3), B::NotGuaranteed, GE::NotGuaranteed, {}},
      // each rule alone
      {make_params({{"chi0", "-1"}, {"alpha", "1.5"}, {"a", "1"}, {"b", "1"}, {"m", "2"}}, 1), B::Guaranteed, GE::Guaranteed, {Rule::T1_1}},
      {make_params({{"chi0", "-1"}}, 1), B::Guaranteed, GE::Guaranteed, {Rule::T1_2}},
      {make_params({{"chi0", "2.5"}, {"beta", "2"}}, 2), B::Guaranteed, GE::Guaranteed, {Rule::T2_2}},
      {make_params({{"chi0", "5"}, {"m", "0.5"}, {"alpha", "0.25"}, {"beta", "0.75"}, {"a", "1"}, {"b", "1"}}, 1),
       B::Guaranteed, GE::GuaranteedIfBoundedOpen, {Rule::T3_ii}},
      {make_params({{"chi0", "0.002"}, {"a", "1"}, {"b", "0.001"}}, 3), B::Guaranteed, GE::Guaranteed, {Rule::T3_iii}},
      {make_params({{"chi0", "1e-6"}, {"m", "0.5"}, {"gamma", "2"}, {"alpha", "1"}, {"beta", "0.75"}, {"a", "1"}, {"b", "1"}}, 3),
       B::Guaranteed, GE::GuaranteedIfBoundedOpen, {Rule::T3_iv}},
      // borderline equalities
      {make_params({{"chi0", "3"}, {"beta", "2"}}, 2), B::NotGuaranteed, GE::NotGuaranteed, {}},
      {make_params({{"chi0", "0.999"}, {"beta", "1"}}, 1), B::Guaranteed, GE::Guaranteed, {Rule::T2_2}},
      {make_params({{"chi0", "1"}, {"beta", "1"}}, 1), B::NotGuaranteed, GE::NotGuaranteed, {}},
      {make_params({{"chi0", "7"}, {"m", "0.3"}, {"gamma", "0.8"}, {"alpha", "0.1"}, {"a", "1"}, {"b", "1"}}, 1),
       B::Guaranteed, GE::GuaranteedIfBoundedOpen, {Rule::T3_iii}},
      {make_params({{"chi0", "7"}, {"m", "0.3"}, {"gamma", "0.8"}, {"alpha", "0.1000001"}, {"a", "1"}, {"b", "1"}}, 1),
       B::Guaranteed, GE::GuaranteedIfBoundedOpen, {Rule::T3_i}},
      {make_params({{"chi0", "1e6"}, {"m", "0.5"}, {"gamma", "2"}, {"alpha", "1"}, {"beta", "0.75"}, {"a", "1"}, {"b", "1"}}, 3),
       B::NotGuaranteed, GE::NotGuaranteed, {}},
      {make_params({{"chi0", "5"}, {"m", "0.75"}, {"gamma", "1"}, {"alpha", "0.5"}, {"beta", "0.5"}, {"a", "1"}, {"b", "1"}}, 1),
       B::Guaranteed, GE::GuaranteedIfBoundedOpen, {Rule::T3_iv}},
      // (Nα−2)_+ = 0 makes the smallness condition vacuous
      {make_params({{"chi0", "1e6"}, {"a", "1"}, {"b", "1"}}, 2), B::Guaranteed, GE::Guaranteed, {Rule::T3_iii}},
      {make_params({{"chi0", "1e6"}, {"m", "0.5"}, {"gamma", "1.5"}, {"alpha", "0.5"}, {"beta", "0.75"}, {"a", "1"}, {"b", "1"}}, 1),
       B::Guaranteed, GE::GuaranteedIfBoundedOpen, {Rule::T3_iv}},
      {make_params({{"chi0", "1e6"}, {"m", "0.75"}, {"gamma", "1.5"}, {"alpha", "1"}, {"beta", "0.5"}, {"a", "1"}, {"b", "1"}}, 2),
       B::Guaranteed, GE::GuaranteedIfBoundedOpen, {Rule::T3_iv}},
      // nothing applies
      {make_params({{"chi0", "0.1"}, {"beta", "0.9"}}, 1), B::NotGuaranteed, GE::NotGuaranteed, {}},
      {make_params({{"chi0", "0.1"}, {"m", "2"}, {"beta", "2"}}, 1), B::NotGuaranteed, GE::NotGuaranteed, {}},
      {make_params({{"chi0", "5"}, {"m", "0.5"}, {"alpha", "0.25"}, {"beta", "0.25"}, {"a", "1"}, {"b", "1"}}, 1),
       B::NotGuaranteed, GE::NotGuaranteed, {}},
      {make_params({{"chi0", "-1"}, {"a", "1"}}, 1), B::NotGuaranteed, GE::NotGuaranteed, {}},
  };
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const RegimeVerdict v = classify(rows[k].p, c1);
    const std::set<Rule> fired(v.rules_fired.begin(), v.rules_fired.end());
    o.require(v.boundedness == rows[k].b && v.global_existence == rows[k].g && fired == rows[k].rules,
              "row " + std::to_string(k) + " got " + std::string(to_string(v.boundedness)) + "/" +
                  std::string(to_string(v.global_existence)) + " [" + v.rules_text() + "]");
  }
  const auto hand = strong_logistic_threshold_1(rows[3].p, c1);
  o.require(hand.is_finite() && std::abs(hand.value() - 0.003) <= 1e-15, "borderline threshold " + hand.to_string());

  std::mt19937_64 rng(41);
  auto pick = [&](const std::vector<const char*>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  int guaranteed = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const char* logistic = pick({"0", "1", "0.5"});
    const ModelParams p = make_params({{"m", pick({"0.5", "1", "1.5", "2"})},
                                       {"beta", pick({"0", "0.5", "1", "2", "3"})},
                                       {"gamma", pick({"0.5", "1", "2"})},
                                       {"alpha", pick({"0.5", "1", "1.5", "2", "3"})},
                                       {"a", logistic},
                                       {"b", logistic},
                                       {"chi0", pick({"-1", "0.01", "0.5", "2", "10", "1000"})}},
                                      std::uniform_int_distribution<int>(1, 3)(rng));
    if (classify(p, c1).boundedness != B::Guaranteed) continue;
    ++guaranteed;
    for (double smaller : {p.chi0 * 0.5, p.chi0 - 0.1, p.chi0 - 10.0}) {
      if (!(smaller < p.chi0)) continue;
      ModelParams q = p;
      q.chi0 = smaller;
      o.require(classify(q, c1).boundedness == B::Guaranteed, "monotonicity in chi0 broken at trial " +
                                                                  std::to_string(trial));
    }
  }

  const ModelParams fixed = make_params({{"chi0", "0.01"}, {"beta", "2"}, {"gamma", "1"}, {"a", "1"}, {"b", "1"}}, 1);
  const RegionTable table = region_sweep(fixed, {"m", parse_decimal("0.125"), parse_decimal("2"), 16},
                                         {"alpha", parse_decimal("0.125"), parse_decimal("3"), 24}, c1);
  int mismatches = 0, on_lines = 0;
  for (const auto& cell : table.cells) {
    const Rational& m = cell.x;
    const Rational& alpha = cell.y;
    const Rational gamma(1);
    if (alpha == m + gamma - 1 || alpha == 2 * m + gamma - 2 || m == 1) ++on_lines;
    const bool ok = cell.verdict.fired(Rule::T3_i) == (alpha > m + gamma - 1) &&
                    cell.verdict.fired(Rule::T3_ii) == (alpha > 2 * m + gamma - 2) &&
                    cell.verdict.fired(Rule::T3_iii) == (alpha == m + gamma - 1) &&
                    (alpha > 2 || cell.verdict.fired(Rule::T3_iv) == (alpha == 2 * m + gamma - 2)) &&
                    cell.verdict.fired(Rule::T2_1) == (m < 1) && cell.verdict.fired(Rule::T2_2) == (m == 1);
    if (!ok) ++mismatches;
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " sweep cells off the exact lines");
  o.require(on_lines > 16, "sweep grid does not hit the lines");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(rows.size()) + " tuples, " +
              std::to_string(guaranteed) + " random guaranteed tuples probed, " + std::to_string(on_lines) +
              " sweep cells on boundary lines";
  return o;
}

// ---------------------------------------------------------------- 10

double reference_psi(long double b) { return b == 0 ? 0.0 : static_cast<double>(std::pow(b / (1 + b), 1 + b)); }
double reference_theta(long double b) {
  return b == 0 ? 1.0 : static_cast<double>(std::pow(b, b) / std::pow(1 + b, 1 + b));
}

Outcome curves_reproduction() {
  Outcome o;
  std::ostringstream csv;
  emit_curves(csv, curve_rows(0.0, 6.4, 400));
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  o.require(line == "beta,psi,theta,theta_2beta_minus_1", "unexpected header " + line);
  double worst = 0.0;
  bool landmark_one = false, landmark_half = false;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    if (line.back() == ',') cols.emplace_back();
    if (cols.size() != 4) {
      o.require(false, "malformed row " + line);
      continue;
    }
    const double beta = std::stod(cols[0]), ps = std::stod(cols[1]), th = std::stod(cols[2]);
    const long double b = beta;
    worst = std::max({worst, testing::ulp_distance(ps, reference_psi(b)), testing::ulp_distance(th, reference_theta(b))});
    if (beta >= 0.5) {
      const double t2 = cols[3].empty() ? NAN : std::stod(cols[3]);
      worst = std::max(worst, testing::ulp_distance(t2, reference_theta(2 * b - 1)));
      if (beta == 0.5) landmark_half = t2 == 1.0;
    } else {
      o.require(cols[3].empty(), "theta_2beta_minus_1 present below 1/2");
    }
    if (beta == 1.0)
      landmark_one = testing::ulp_distance(ps, 0.25) <= 4 && testing::ulp_distance(th, 0.25) <= 4;
  }
  o.require(rows >= 400, "only " + std::to_string(rows) + " rows");
  o.require(worst <= 4.0, "worst deviation " + sci(worst) + " ulp");
  o.require(landmark_one, "beta = 1 landmark missing or wrong");
  o.require(landmark_half, "beta = 1/2 landmark missing or wrong");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(rows) + " rows, worst " + sci(worst) + " ulp";
  return o;
}

// ---------------------------------------------------------------- 11

Outcome guaranteed_soak() {
  Outcome o;
  for (const auto& [rule, s] : soak_scenarios()) {
    const RegimeVerdict verdict = classify(s.params, EllipticConstantModel::default_for(s.params.dim));
    const RunOutcome out = run(s.u0, s.params, s.stepper, s.t_final);
    const CheckReport report = check_trajectory(out.trajectory, s.params, verdict);
    const std::string id(rule_id(rule));
    o.require(verdict.fired(rule), id + " scenario does not fire its rule");
    o.require(out.status != RunStatus::BlowUpDetected, id + " blew up");
    for (const auto& e : report.entries)
      o.require(!e.gating || e.passed, id + " " + e.name + " residual " + sci(e.residual));
    o.detail += (o.detail.empty() ? "" : "; ") + id + " " + std::string(to_string(out.status)) + " peak " +
                sci(out.peak_sup);
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "constants suite", 1.0, constants_suite},
      {2, "entropy inequality", 5.0, entropy_inequality},
      {3, "resolvent contraction", 10.0, resolvent_contraction},
      {4, "gradient estimate", 20.0, gradient_estimate},
      {5, "mass conservation", 30.0, mass_conservation},
      {6, "negative sensitivity bound", 30.0, negative_sensitivity_bound},
      {7, "equilibrium fixed point", 5.0, equilibria},
      {8, "heat calibration", 60.0, heat_calibration},
      {9, "classifier truth table", 10.0, classifier_truth_table},
      {10, "curves reproduction", 1.0, curves_reproduction},
      {11, "guaranteed-regime soak", 300.0, guaranteed_soak},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) {
      o.passed = false;
      o.detail += "; runtime over budget " + sci(c.budget_seconds) + " s";
    }
    if (!o.passed) ++failures;
    std::printf("%s  [%2d] %-28s %8.3f s  %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), seconds,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
