#pragma once

#include <string>

namespace chemotaxis {

/// A real number or +infinity. Thresholds that the theory interprets as
/// "+infinity" (vacuous conditions) are carried explicitly instead of as a
/// sentinel float.
class ExtendedReal {
 public:
  constexpr explicit ExtendedReal(double value) : value_(value), infinite_(false) {}

  static constexpr ExtendedReal infinity() { return ExtendedReal(); }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; throws std::logic_error on +infinity.
  double value() const;

  /// Numeric view: +inf maps to std::numeric_limits<double>::infinity().
  double as_double() const;

  /// True when x < *this (every finite x is below +infinity).
  constexpr bool above(double x) const { return infinite_ || x < value_; }

  friend constexpr bool operator==(const ExtendedReal& l, const ExtendedReal& r) {
    return l.infinite_ == r.infinite_ && (l.infinite_ || l.value_ == r.value_);
  }
  friend constexpr bool operator<(const ExtendedReal& l, const ExtendedReal& r) {
    if (l.infinite_) return false;
    return r.infinite_ || l.value_ < r.value_;
  }

  /// "inf" or the value with 17 significant digits.
  std::string to_string() const;

 private:
  constexpr ExtendedReal() : value_(0.0), infinite_(true) {}

  double value_;
  bool infinite_;
};

}  // namespace chemotaxis
