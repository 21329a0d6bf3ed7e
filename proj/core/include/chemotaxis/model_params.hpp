#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace chemotaxis {

using Rational = boost::multiprecision::cpp_rational;

/// Parses a decimal literal ("-1.25", "3e-2", "7") into an exact rational.
/// Throws std::invalid_argument on anything else.
Rational parse_decimal(std::string_view text);

/// Exact decimal rendering of a rational whose denominator has only the
/// prime factors 2 and 5; other rationals fall back to 17 significant digits.
std::string format_decimal(const Rational& value);

double to_double(const Rational& value);

/// Exact copies of the exponents that enter the borderline comparisons
/// alpha = m + gamma - 1, alpha = 2m + gamma - 2, m = 1, beta >= 1, beta >= 1/2.
struct ExactExponents {
  std::optional<Rational> m;
  std::optional<Rational> alpha;
  std::optional<Rational> gamma;
  std::optional<Rational> beta;

  bool operator==(const ExactExponents&) const = default;
};

/// The parameter tuple of the parabolic-elliptic model
///   u_t = Δu − χ0 ∇·(u^m (1+v)^{-β} ∇v) + a u − b u^{1+α},
///   0   = Δv − μ v + ν u^γ,   Neumann boundary.
struct ModelParams {
  double chi0 = 0.0;
  double m = 1.0;
  double beta = 0.0;
  double alpha = 1.0;
  double gamma = 1.0;
  double a = 0.0;
  double b = 0.0;
  double mu = 1.0;
  double nu = 1.0;
  int dim = 1;

  ExactExponents exact;

  /// Throws ParameterError naming the first violated constraint.
  void validate() const;

  /// Carrying capacity (a/b)^{1/alpha}; requires b > 0.
  double carrying_capacity() const;

  bool minimal_logistic() const { return a == 0.0 && b == 0.0; }
  bool positive_logistic() const { return a > 0.0 && b > 0.0; }

  bool operator==(const ModelParams&) const = default;
};

/// Validated copy; throws ParameterError.
ModelParams validated(ModelParams params);

/// Names accepted by set_parameter / get_parameter:
/// chi0, m, beta, alpha, gamma, a, b, mu, nu.
bool is_parameter_name(std::string_view name);

/// Sets one parameter from an exact value; exponents keep the exact copy.
/// Throws std::invalid_argument on unknown names.
void set_parameter(ModelParams& params, std::string_view name, const Rational& value);

double get_parameter(const ModelParams& params, std::string_view name);

}  // namespace chemotaxis
