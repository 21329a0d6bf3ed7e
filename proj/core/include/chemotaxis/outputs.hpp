#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "chemotaxis/diagnostics.hpp"

namespace chemotaxis {

struct CurveRow {
  double beta;
  double psi;
  double theta;
  std::optional<double> theta_2beta_minus_1;  ///< only for β ≥ 1/2
};

/// `resolution` equispaced β values over [lo, hi] (inclusive), merged with
/// the landmarks 1/2, 1, 2, 3 that fall inside the range. Throws
/// DomainError when lo < 0 or hi < lo.
std::vector<CurveRow> curve_rows(double beta_lo, double beta_hi, int resolution);

/// Columns beta,psi,theta,theta_2beta_minus_1 with 17 significant digits.
void emit_curves(std::ostream& os, const std::vector<CurveRow>& rows);

/// One row per accepted step: t, dt, sup u, inf u, mass, ‖u‖2, ‖v‖∞ and residuals.
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);

/// Library version string.
const char* library_version();

/// 64-bit FNV-1a hash.
std::uint64_t fnv1a(std::string_view bytes);

}  // namespace chemotaxis
