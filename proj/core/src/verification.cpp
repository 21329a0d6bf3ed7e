#include "chemotaxis/verification.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <thread>

#include "chemotaxis/diagnostics.hpp"
#include "chemotaxis/dynamics.hpp"
#include "chemotaxis/elliptic.hpp"
#include "chemotaxis/regime.hpp"
#include "chemotaxis/scenarios.hpp"

namespace chemotaxis {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

PropertyResult bounded(std::string name, double residual, double tol) {
  return {std::move(name), residual <= tol, "residual " + sci(residual) + " (tolerance " + sci(tol) + ")"};
}

PropertyResult constants_check() {
  double worst = 0.0;
  worst = std::max(worst, std::abs(psi(1.0) - 0.25));
  worst = std::max(worst, std::abs(theta(1.0) - 0.25));
  worst = std::max(worst, std::abs(psi(0.0)));
  worst = std::max(worst, std::abs(theta(0.0) - 1.0));
  worst = std::max(worst, std::abs(psi(1e4) - std::exp(-1.0)) > 1e-4 ? 1.0 : 0.0);
  return bounded("constants", worst, 1e-15);
}

PropertyResult eigenfunction_check() {
  const int n = 256;
  const double mu = 1.0;
  const Grid g = Grid::line(1.0, n);
  const Field f = Field::from_function(g, [](double x, double) { return std::cos(std::numbers::pi * x); });
  const Field w = resolvent_apply(f, mu);
  const double scale = 1.0 / (mu + neumann_eigenvalue(n, g.hx(), 1));
  double err = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) err = std::max(err, std::abs(w[k] - scale * f[k]));
  return bounded("resolvent eigenfunction", err, 1e-12);
}

PropertyResult equilibrium_check(const std::string& a, const std::string& b, const std::string& alpha) {
  Scenario s = equilibrium_scenario(a, b, alpha);
  const RunOutcome out = run(s.u0, s.params, s.stepper, s.t_final);
  double err = 0.0;
  for (std::size_t k = 0; k < s.u0.size(); ++k) err = std::max(err, std::abs(out.final_state.u[k] - s.u0[k]));
  PropertyResult r = bounded("equilibrium a=" + a + " b=" + b + " alpha=" + alpha, err, 1e-12);
  if (out.status != RunStatus::SteadyState) {
    r.passed = false;
    r.detail += ", status " + std::string(to_string(out.status));
  }
  return r;
}

PropertyResult mass_check(double chi0) {
  ModelParams p;
  p.chi0 = chi0;
  p.beta = 1.0;
  const Field u0 = Field::from_function(Grid::line(1.0, 256), [](double x, double) {
    return 1.0 + 0.5 * std::cos(std::numbers::pi * x) + 0.2 * std::cos(3.0 * std::numbers::pi * x);
  });
  StepperConfig cfg;
  cfg.steady_tol = 0.0;
  const RunOutcome out = run(u0, p, cfg, 2.0);
  const double m0 = mass(u0);
  double drift = 0.0;
  for (const auto& r : out.trajectory.records) drift = std::max(drift, std::abs(r.mass - m0) / m0);
  return bounded("mass conservation chi0=" + sci(chi0), drift, 1e-10);
}

PropertyResult heat_check() {
  const double length = 8.0;
  const int n = 128;
  const Scenario s = heat_scenario(n, length, 1e-3, 1.0);
  const RunOutcome out = run(s.u0, s.params, s.stepper, s.t_final);
  const double lambda = neumann_eigenvalue(n, length / n, 1);
  const Grid& g = s.u0.grid();
  double amplitude = 0.0;
  for (int i = 0; i < n; ++i)
    amplitude += (out.final_state.u.at(i) - 1.0) * std::cos(std::numbers::pi * g.center(0, i) / length);
  amplitude *= 2.0 / n;
  return bounded("heat calibration amplitude", std::abs(amplitude - 0.5 * std::exp(-lambda * out.t_final)), 1e-4);
}

PropertyResult classify_check(const std::string& name, const ModelParams& p, Boundedness expected_b,
                              GlobalExistence expected_g, std::optional<Rule> must_fire) {
  const RegimeVerdict v = classify(p, EllipticConstantModel::user(1.0));
  const bool ok = v.boundedness == expected_b && v.global_existence == expected_g && (!must_fire || v.fired(*must_fire));
  return {"classify " + name, ok,
          std::string(to_string(v.boundedness)) + "/" + std::string(to_string(v.global_existence)) + " rules [" +
              v.rules_text() + "]"};
}

PropertyResult soak_check(Rule rule, const Scenario& s) {
  const RegimeVerdict verdict = classify(s.params, EllipticConstantModel::default_for(s.params.dim));
  const RunOutcome out = run(s.u0, s.params, s.stepper, s.t_final);
  const CheckReport report = check_trajectory(out.trajectory, s.params, verdict);
  std::string detail = "status " + std::string(to_string(out.status)) + ", peak " + sci(out.peak_sup);
  bool ok = verdict.fired(rule) && report.passed();
  if (!verdict.fired(rule)) detail += ", rule not fired";
  for (const auto& e : report.entries)
    if (e.gating && !e.passed) detail += ", failed " + e.name + " (" + sci(e.residual) + ")";
  return {"soak " + std::string(rule_id(rule)) + " " + s.name, ok, detail};
}

}  // namespace

std::vector<PropertyResult> run_property_suite(int jobs) {
  std::vector<std::function<PropertyResult()>> tasks;
  tasks.emplace_back(constants_check);
  tasks.emplace_back(eigenfunction_check);
  tasks.emplace_back([] { return equilibrium_check("1", "1", "1"); });
  tasks.emplace_back([] { return equilibrium_check("2", "0.5", "2"); });
  tasks.emplace_back([] { return equilibrium_check("0.3", "1.2", "0.5"); });
  for (double chi0 : {-2.0, 0.0, 2.0}) tasks.emplace_back([chi0] { return mass_check(chi0); });
  tasks.emplace_back(heat_check);
  tasks.emplace_back([] {
    return classify_check("negative sensitivity", make_params({{"chi0", "-1"}, {"a", "1"}, {"b", "1"}}, 1),
                          Boundedness::Guaranteed, GlobalExistence::Guaranteed, Rule::T1_1);
  });
  tasks.emplace_back([] {
    return classify_check("sublinear cross diffusion",
                          make_params({{"m", "0.5"}, {"beta", "1.2"}, {"chi0", "5"}}, 1), Boundedness::Guaranteed,
                          GlobalExistence::NotGuaranteed, Rule::T2_1);
  });
  tasks.emplace_back([] {
    return classify_check("strong logistic",
                          make_params({{"m", "1"}, {"alpha", "2"}, {"a", "1"}, {"b", "1"}, {"chi0", "100"}}, 2),
                          Boundedness::Guaranteed, GlobalExistence::Guaranteed, Rule::T3_i);
  });
  tasks.emplace_back([] {
    return classify_check("borderline above threshold",
                          make_params({{"chi0", "1000"}, {"a", "1"}, {"b", "0.001"}}, 3),
                          Boundedness::NotGuaranteed, GlobalExistence::NotGuaranteed, std::nullopt);
  });
  for (auto& [rule, scenario] : soak_scenarios())
    tasks.emplace_back([rule = rule, s = scenario] { return soak_check(rule, s); });

  std::vector<std::optional<PropertyResult>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      try {
        results[k] = tasks[k]();
      } catch (const std::exception& e) {
        results[k] = PropertyResult{"task " + std::to_string(k), false, std::string("exception: ") + e.what()};
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < std::max(1, jobs); ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<PropertyResult> out;
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

void write_property_results(std::ostream& os, const std::vector<PropertyResult>& results) {
  for (const auto& r : results) os << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
}

}  // namespace chemotaxis
