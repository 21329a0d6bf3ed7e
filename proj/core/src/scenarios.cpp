#include "chemotaxis/scenarios.hpp"

#include <cmath>
#include <numbers>

namespace chemotaxis {

ModelParams make_params(std::initializer_list<std::pair<const char*, const char*>> values, int dim) {
  ModelParams p;
  p.dim = dim;
  for (const auto& [name, text] : values) set_parameter(p, name, parse_decimal(text));
  p.validate();
  return p;
}

namespace {

constexpr double kPi = std::numbers::pi;

Field cosine_1d(int n, double level, double amplitude) {
  return Field::from_function(Grid::line(1.0, n),
                              [=](double x, double) { return level + amplitude * std::cos(kPi * x); });
}

Field cosine_2d(int n, double level, double amplitude) {
  return Field::from_function(Grid::rectangle(1.0, 1.0, n, n), [=](double x, double y) {
    return level + amplitude * std::cos(kPi * x) * std::cos(kPi * y);
  });
}

Scenario soak(std::string name, ModelParams params, Field u0) {
  return Scenario{std::move(name), std::move(params), std::move(u0), StepperConfig{}, 10.0};
}

}  // namespace

std::vector<std::pair<Rule, Scenario>> soak_scenarios() {
  std::vector<std::pair<Rule, Scenario>> out;
  out.emplace_back(Rule::T1_1, soak("negative-sensitivity-logistic",
                                    make_params({{"chi0", "-1"}, {"m", "1"}, {"beta", "1"}, {"alpha", "1"},
                                                 {"gamma", "1"}, {"a", "1"}, {"b", "1"}},
                                                1),
                                    cosine_1d(256, 1.5, 0.3)));
  out.emplace_back(Rule::T1_2, soak("negative-sensitivity-minimal",
                                    make_params({{"chi0", "-2"}, {"m", "1"}, {"beta", "0.5"}}, 2),
                                    cosine_2d(64, 1.0, 0.5)));
  out.emplace_back(Rule::T2_1, soak("sublinear-cross-diffusion",
                                    make_params({{"chi0", "5"}, {"m", "0.5"}, {"beta", "1.2"}}, 1),
                                    cosine_1d(256, 1.0, 0.5)));
  out.emplace_back(Rule::T2_2, soak("weak-cross-diffusion",
                                    make_params({{"chi0", "2.5"}, {"m", "1"}, {"beta", "2"}}, 2),
                                    cosine_2d(64, 1.0, 0.5)));
  out.emplace_back(Rule::T3_i, soak("superlinear-logistic",
                                    make_params({{"chi0", "5"}, {"m", "1"}, {"alpha", "2"}, {"a", "1"}, {"b", "1"}},
                                                1),
                                    cosine_1d(256, 1.0, 0.5)));
  out.emplace_back(Rule::T3_ii, soak("damped-sensitivity-logistic",
                                     make_params({{"chi0", "5"}, {"m", "0.5"}, {"beta", "0.75"}, {"alpha", "0.25"},
                                                  {"a", "1"}, {"b", "1"}},
                                                 1),
                                     cosine_1d(256, 1.0, 0.5)));
  return out;
}

Scenario equilibrium_scenario(const std::string& a, const std::string& b, const std::string& alpha) {
  ModelParams p = make_params({{"chi0", "1"}, {"a", a.c_str()}, {"b", b.c_str()}, {"alpha", alpha.c_str()}}, 1);
  Field u0(Grid::line(1.0, 64), p.carrying_capacity());
  return Scenario{"equilibrium", p, std::move(u0), StepperConfig{}, 5.0};
}

Scenario heat_scenario(int cells, double length, double dt, double t_final) {
  ModelParams p = make_params({}, 1);
  Field u0 = Field::from_function(Grid::line(length, cells),
                                  [=](double x, double) { return 1.0 + 0.5 * std::cos(kPi * x / length); });
  StepperConfig cfg;
  cfg.dt_min = dt;
  cfg.dt_init = dt;
  cfg.dt_max = dt;
  cfg.steady_tol = 0.0;
  return Scenario{"heat", p, std::move(u0), cfg, t_final};
}

}  // namespace chemotaxis
