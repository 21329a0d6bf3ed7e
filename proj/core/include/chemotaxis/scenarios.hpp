#pragma once

#include <string>
#include <vector>

#include "chemotaxis/grid.hpp"
#include "chemotaxis/model_params.hpp"
#include "chemotaxis/regime.hpp"
#include "chemotaxis/sim_state.hpp"

namespace chemotaxis {

/// A ready-to-run simulation setup.
struct Scenario {
  std::string name;
  ModelParams params;
  Field u0;
  StepperConfig stepper;
  double t_final;
};

/// Builds ModelParams from decimal strings, keeping exact exponents.
/// Keys are the ModelParams field names; `dim` is set separately.
ModelParams make_params(std::initializer_list<std::pair<const char*, const char*>> values, int dim);

/// One simulate scenario per boundedness rule that can fire alone:
/// T1.1, T1.2, T2.1, T2.2, T3.i, T3.ii (n = 256 in 1D, 64² in 2D, T = 10).
std::vector<std::pair<Rule, Scenario>> soak_scenarios();

/// u0 ≡ (a/b)^{1/α} for the given logistic triple on a 1D grid.
Scenario equilibrium_scenario(const std::string& a, const std::string& b, const std::string& alpha);

/// χ0 = 0, a = b = 0, u0 = 1 + ½ cos(πx/L) with fixed dt.
Scenario heat_scenario(int cells, double length, double dt, double t_final);

}  // namespace chemotaxis
