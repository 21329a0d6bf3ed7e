#pragma once

#include <cstddef>
#include <string_view>

#include "chemotaxis/grid.hpp"

namespace chemotaxis {

/// Time level of the coupled system; v is always the resolvent image of u.
struct SimState {
  double t = 0.0;
  Field u;
  Field v;
  double dt_last = 0.0;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
};

/// Face value of u^m in the chemotactic flux.
enum class FluxScheme {
  Upwind,   ///< donor cell, positivity friendly
  Central,  ///< arithmetic mean of u^m, no positivity guarantee
};

struct StepperConfig {
  double cfl = 0.4;
  double dt_min = 1e-10;
  double dt_init = 1e-4;
  double dt_max = 0.1;
  double blowup_cap = 0.0;  ///< 0 selects 1e6 * max(1, ‖u0‖∞)
  double extinction_floor = 1e-10;
  double steady_tol = 1e-9;
  double u_floor = 1e-12;   ///< ε_u in the advective speed for m < 1
  int steady_window = 10;
  int max_halvings = 30;
  FluxScheme scheme = FluxScheme::Upwind;

  /// Throws ParameterError on inconsistent settings.
  void validate() const;
  bool operator==(const StepperConfig&) const = default;
};

enum class RunStatus { ReachedFinalTime, SteadyState, BlowUpDetected, PositivityFailure, StepSizeUnderflow };

std::string_view to_string(RunStatus status);
std::string_view to_string(FluxScheme scheme);

}  // namespace chemotaxis
