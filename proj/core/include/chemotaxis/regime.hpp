#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chemotaxis/constants.hpp"
#include "chemotaxis/extended_real.hpp"
#include "chemotaxis/model_params.hpp"

namespace chemotaxis {

enum class Boundedness { Guaranteed, NotGuaranteed };
enum class GlobalExistence { Guaranteed, GuaranteedIfBoundedOpen, NotGuaranteed };

/// Clauses that can certify boundedness:
///   T1.1  χ0 ≤ 0, a, b > 0          sup u ≤ max{‖u0‖∞, (a/b)^{1/α}}
///   T1.2  χ0 ≤ 0, a = b = 0         sup u ≤ ‖u0‖∞
///   T2.1  0 < m < 1, β ≥ 1
///   T2.2  m = 1, β ≥ 1, χ0 < 2(2β−1)/max{2, γN}
///   T3.i  a, b > 0, α > m + γ − 1
///   T3.ii a, b > 0, β ≥ 1/2, α > 2m + γ − 2
///   T3.iii a, b > 0, α = m + γ − 1 and a χ0 smallness condition
///   T3.iv a, b > 0, β ≥ 1/2, α = 2m + γ − 2 and a χ0 smallness condition
enum class Rule { T1_1, T1_2, T2_1, T2_2, T3_i, T3_ii, T3_iii, T3_iv };

std::string_view rule_id(Rule rule);

/// A χ0 condition that was evaluated, fired or not.
struct ThresholdCheck {
  Rule rule;
  ExtendedReal threshold;
  bool satisfied;
};

struct RegimeVerdict {
  Boundedness boundedness = Boundedness::NotGuaranteed;
  GlobalExistence global_existence = GlobalExistence::NotGuaranteed;
  std::vector<Rule> rules_fired;
  std::vector<ThresholdCheck> thresholds;
  std::vector<std::string> caveats;

  bool fired(Rule rule) const;
  /// Largest evaluated χ0 threshold (the least restrictive sufficient condition).
  std::optional<ExtendedReal> binding_threshold() const;
  std::string rules_text() const;  ///< "T1.1;T3.i", empty when nothing fires
};

std::string_view to_string(Boundedness b);
std::string_view to_string(GlobalExistence g);

/// Evaluates every clause against `params`. Borderline equalities are
/// decided exactly when params.exact carries m, alpha, gamma (and beta for the
/// β bounds); otherwise with a 1e-12 relative tolerance.
RegimeVerdict classify(const ModelParams& params, const EllipticConstantModel& c_model);

/// χ0 threshold of T3.iii: ((Nα−2)_+ + 2m) b / ((Nα−2)_+ (ν + Ψ_β K)), +∞ when (Nα−2)_+ = 0.
ExtendedReal strong_logistic_threshold_1(const ModelParams& params, const EllipticConstantModel& c_model);

/// χ0 threshold of T3.iv: (8b / ((Nα−2)_+ Θ_{2β−1} K))^{1/2}, +∞ when (Nα−2)_+ = 0.
ExtendedReal strong_logistic_threshold_2(const ModelParams& params, const EllipticConstantModel& c_model);

/// χ0 threshold of T2.2: 2(2β−1)/max{2, γN}.
double weak_cross_diffusion_threshold(const ModelParams& params);

void write_verdict_text(std::ostream& os, const ModelParams& params, const RegimeVerdict& verdict);
void write_verdict_csv(std::ostream& os, const RegimeVerdict& verdict);

// ---------------------------------------------------------------- sweeps

struct SweepAxis {
  std::string name;  ///< a ModelParams field name (see is_parameter_name)
  Rational lo;
  Rational hi;
  int resolution = 8;

  /// Exact node i of the uniform grid lo..hi (inclusive) with `resolution` nodes.
  Rational node(int i) const;
};

struct RegionCell {
  Rational x;
  Rational y;
  RegimeVerdict verdict;
};

struct RegionTable {
  SweepAxis x_axis;
  SweepAxis y_axis;
  std::vector<RegionCell> cells;  ///< row-major, x fastest
};

/// Classifies every node of the 2-parameter grid. Axis values are exact
/// rationals, so region boundaries on exact lines are reproduced exactly.
/// Throws std::invalid_argument on unknown/duplicate axis names or resolution < 8.
RegionTable region_sweep(const ModelParams& fixed, const SweepAxis& x_axis, const SweepAxis& y_axis,
                         const EllipticConstantModel& c_model, int jobs = 1);

/// One row per cell: axis values, boundedness, global existence, rules, binding threshold.
void write_region_csv(std::ostream& os, const RegionTable& table);

}  // namespace chemotaxis
