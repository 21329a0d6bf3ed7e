#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chemotaxis/extended_real.hpp"
#include "chemotaxis/model_params.hpp"

namespace chemotaxis {

/// Ψ_β = (β/(1+β))^{1+β}, with Ψ_0 = 0. Strictly increasing, bounded by 1/e.
double psi(double beta);

/// Θ_β = β^β (1+β)^{-(1+β)}, with Θ_0 = 1. Strictly decreasing on (0, ∞).
double theta(double beta);

/// Source of the elliptic-regularity constant C_{N,p} in
///   ∫|D²v|^p ≤ C_{N,p} ∫(|Δv|^p + v^p).
///
/// The optimal constant is not known in closed form. Thresholds are therefore
/// parametric in this model. A user constant is taken as given (1 is valid in
/// one dimension). The empirical mode yields a lower bound from random trial
/// fields, so thresholds built on it are indicative only.
class EllipticConstantModel {
 public:
  static EllipticConstantModel user(double value);
  static EllipticConstantModel empirical(int trials, std::uint64_t seed);
  /// UserConstant(1) in 1D, EmpiricalLowerBound(200, 1) otherwise.
  static EllipticConstantModel default_for(int dim);

  double value(int dim, double p) const;
  bool is_empirical() const { return !user_value_.has_value(); }
  int trials() const { return trials_; }
  std::uint64_t seed() const { return seed_; }
  std::optional<double> user_value() const { return user_value_; }

  std::string describe() const;

 private:
  struct Cache;

  EllipticConstantModel() = default;

  std::optional<double> user_value_;
  int trials_ = 0;
  std::uint64_t seed_ = 0;
  // Shared memo of estimates; the estimate is a pure function of
  // (dim, p, trials, seed), so copies may share it.
  std::shared_ptr<Cache> cache_;
};

/// M*(N,p,μ,ν) = ν^p [ (8^p/p) C_{N,p} (2^p + μ^{-p}) + 2^{2p}/((p−1) p^p) ].
double m_star(int dim, double p, double mu, double nu, const EllipticConstantModel& c_model);

/// q_* = max{1, Nα/2}.
double q_star(int dim, double alpha);

/// K(N,α,γ,μ,ν): the right-limit of [M*(N,(q+α)/γ,μ,ν)]^{γ/(q+α)} as q ↓ q_*.
/// +∞ when (q_*+α)/γ ≤ 1, where M* is not defined near the limit.
ExtendedReal k_constant(int dim, double alpha, double gamma, double mu, double nu,
                        const EllipticConstantModel& c_model);

/// The approximating sequence at q_j = q_*(1 + 2^{-j}), j = 1..terms.
std::vector<double> k_sequence(int dim, double alpha, double gamma, double mu, double nu,
                               const EllipticConstantModel& c_model, int terms = 20);

/// The χ0 thresholds on the slice m = 1, α = γ:
///   chi1 = Nγ b / ((Nγ−2)(ν + Ψ_β K)),
///   chi2 = (8b / ((Nγ−2) Θ_{2β−1} K))^{1/2},
///   chiw = 2(2β−1)/max{2, γN},
/// with chi1 = chi2 = +∞ when Nγ ≤ 2.
struct ChiThresholds {
  std::optional<ExtendedReal> chi1;  ///< empty when the slice preconditions fail
  std::optional<ExtendedReal> chi2;  ///< empty when the slice preconditions fail or β < 1/2
  double chiw = 0.0;
  bool chiw_is_guarantee = false;    ///< β ≥ 1
  bool uses_empirical_c = false;
  std::vector<std::string> notes;
};

ChiThresholds chi_thresholds(const ModelParams& params, const EllipticConstantModel& c_model);

/// A finite cosine expansion on the unit box [0,1]^N,
///   v(x) = Σ_k c_k Π_d cos(k_d π x_d).
struct CosineTrialField {
  int dim = 1;
  std::vector<std::array<int, 3>> modes;
  std::vector<double> coefficients;
};

/// Midpoint-rule ratio ∫|D²v|^p / ∫(|Δv|^p + |v|^p) of a trial field with
/// analytic derivatives, on `cells` points per axis (0 picks the default:
/// 512, 64, 16 for N = 1, 2, 3).
double regularity_ratio(const CosineTrialField& field, double p, int cells = 0);

/// Empirical lower bound for C*_{N,p}: the largest regularity_ratio over
/// `trials` random trial fields. Deterministic in `seed`.
double estimate_c_star(int dim, double p, int trials, std::uint64_t seed);

}  // namespace chemotaxis
