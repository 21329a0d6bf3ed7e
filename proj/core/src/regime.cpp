#include "chemotaxis/regime.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace chemotaxis {

std::string_view rule_id(Rule rule) {
  switch (rule) {
    case Rule::T1_1: return "T1.1";
    case Rule::T1_2: return "T1.2";
    case Rule::T2_1: return "T2.1";
    case Rule::T2_2: return "T2.2";
    case Rule::T3_i: return "T3.i";
    case Rule::T3_ii: return "T3.ii";
    case Rule::T3_iii: return "T3.iii";
    case Rule::T3_iv: return "T3.iv";
  }
  return "?";
}

std::string_view to_string(Boundedness b) {
  return b == Boundedness::Guaranteed ? "Guaranteed" : "NotGuaranteed";
}

std::string_view to_string(GlobalExistence g) {
  switch (g) {
    case GlobalExistence::Guaranteed: return "Guaranteed";
    case GlobalExistence::GuaranteedIfBoundedOpen: return "GuaranteedIfBoundedOpen";
    case GlobalExistence::NotGuaranteed: return "NotGuaranteed";
  }
  return "?";
}

bool RegimeVerdict::fired(Rule rule) const {
  return std::find(rules_fired.begin(), rules_fired.end(), rule) != rules_fired.end();
}

std::optional<ExtendedReal> RegimeVerdict::binding_threshold() const {
  std::optional<ExtendedReal> best;
  for (const auto& check : thresholds)
    if (!best || *best < check.threshold) best = check.threshold;
  return best;
}

std::string RegimeVerdict::rules_text() const {
  std::string out;
  for (Rule r : rules_fired) {
    if (!out.empty()) out += ';';
    out += rule_id(r);
  }
  return out;
}

namespace {

constexpr double kRelTol = 1e-12;

int sign_with_tolerance(double diff, double scale) {
  const double tol = kRelTol * std::max(1.0, scale);
  if (diff > tol) return 1;
  if (diff < -tol) return -1;
  return 0;
}

int sign_exact(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

/// sign of α − (k·m + γ − k), i.e. the position relative to the line α = k m + γ − k.
int side_of_line(const ModelParams& p, int k) {
  const auto& e = p.exact;
  if (e.alpha && e.m && e.gamma) return sign_exact(*e.alpha - (k * *e.m + *e.gamma - k));
  const double diff = p.alpha - (k * p.m + p.gamma - k);
  return sign_with_tolerance(diff, std::max({std::abs(p.alpha), k * std::abs(p.m), std::abs(p.gamma)}));
}

/// sign of m − 1
int m_vs_one(const ModelParams& p) {
  if (p.exact.m) return sign_exact(*p.exact.m - 1);
  return sign_with_tolerance(p.m - 1.0, std::abs(p.m));
}

/// β ≥ bound (bound given as num/den)
bool beta_at_least(const ModelParams& p, int num, int den) {
  if (p.exact.beta) return *p.exact.beta >= Rational(num, den);
  return sign_with_tolerance(p.beta - static_cast<double>(num) / den, p.beta) >= 0;
}

/// (Nα − 2)_+ as a double, with exact zero detection.
double n_alpha_minus_two_plus(const ModelParams& p) {
  if (p.exact.alpha) {
    if (p.dim * *p.exact.alpha <= 2) return 0.0;
    return to_double(p.dim * *p.exact.alpha - 2);
  }
  const double d = p.dim * p.alpha - 2.0;
  return sign_with_tolerance(d, p.dim * p.alpha) > 0 ? d : 0.0;
}

}  // namespace

double weak_cross_diffusion_threshold(const ModelParams& params) {
  return 2.0 * (2.0 * params.beta - 1.0) / std::max(2.0, params.gamma * params.dim);
}

ExtendedReal strong_logistic_threshold_1(const ModelParams& params, const EllipticConstantModel& c_model) {
  const double excess = n_alpha_minus_two_plus(params);
  if (excess == 0.0) return ExtendedReal::infinity();
  const ExtendedReal k = k_constant(params.dim, params.alpha, params.gamma, params.mu, params.nu, c_model);
  if (k.is_infinite()) return ExtendedReal(0.0);
  return ExtendedReal((excess + 2.0 * params.m) * params.b / (excess * (params.nu + psi(params.beta) * k.value())));
}

ExtendedReal strong_logistic_threshold_2(const ModelParams& params, const EllipticConstantModel& c_model) {
  const double excess = n_alpha_minus_two_plus(params);
  if (excess == 0.0) return ExtendedReal::infinity();
  const ExtendedReal k = k_constant(params.dim, params.alpha, params.gamma, params.mu, params.nu, c_model);
  if (k.is_infinite()) return ExtendedReal(0.0);
  return ExtendedReal(std::sqrt(8.0 * params.b / (excess * theta(2.0 * params.beta - 1.0) * k.value())));
}

RegimeVerdict classify(const ModelParams& params, const EllipticConstantModel& c_model) {
  params.validate();
  RegimeVerdict verdict;
  auto fire = [&](Rule r) { verdict.rules_fired.push_back(r); };
  const bool k_needed_note = c_model.is_empirical();
  auto note_k = [&](const ExtendedReal& thr) {
    if (thr.is_infinite()) return;
    if (k_needed_note)
      verdict.caveats.emplace_back(std::string(rule_id(verdict.thresholds.back().rule)) +
                                   ": threshold uses empirical C_{N,p} (indicative, not certified)");
    const ExtendedReal k = k_constant(params.dim, params.alpha, params.gamma, params.mu, params.nu, c_model);
    if (k.is_infinite())
      verdict.caveats.emplace_back(std::string(rule_id(verdict.thresholds.back().rule)) +
                                   ": K = +inf since (q*+alpha)/gamma <= 1; condition fails for chi0 > 0");
  };

  // negative sensitivity
  if (params.chi0 <= 0.0) {
    if (params.positive_logistic()) fire(Rule::T1_1);
    if (params.minimal_logistic()) fire(Rule::T1_2);
  }

  // weak nonlinear cross diffusion
  const int m_cmp = m_vs_one(params);
  const bool beta_ge_1 = beta_at_least(params, 1, 1);
  if (beta_ge_1 && m_cmp < 0) fire(Rule::T2_1);
  if (beta_ge_1 && m_cmp == 0) {
    const double thr = weak_cross_diffusion_threshold(params);
    const bool ok = params.chi0 < thr;
    verdict.thresholds.push_back({Rule::T2_2, ExtendedReal(thr), ok});
    if (ok) fire(Rule::T2_2);
  }

  // relatively strong logistic source
  bool any_t3 = false;
  if (params.positive_logistic()) {
    const int line1 = side_of_line(params, 1);
    const int line2 = side_of_line(params, 2);
    const bool beta_ge_half = beta_at_least(params, 1, 2);
    if (line1 > 0) {
      fire(Rule::T3_i);
      any_t3 = true;
    }
    if (beta_ge_half && line2 > 0) {
      fire(Rule::T3_ii);
      any_t3 = true;
    }
    if (line1 == 0) {
      const ExtendedReal thr = strong_logistic_threshold_1(params, c_model);
      const bool ok = thr.above(params.chi0);
      verdict.thresholds.push_back({Rule::T3_iii, thr, ok});
      note_k(thr);
      if (ok) {
        fire(Rule::T3_iii);
        any_t3 = true;
      }
    }
    if (beta_ge_half && line2 == 0) {
      const ExtendedReal thr = strong_logistic_threshold_2(params, c_model);
      const bool ok = thr.above(params.chi0);
      verdict.thresholds.push_back({Rule::T3_iv, thr, ok});
      note_k(thr);
      if (ok) {
        fire(Rule::T3_iv);
        any_t3 = true;
      }
    }
  }

  if (!verdict.rules_fired.empty()) {
    verdict.boundedness = Boundedness::Guaranteed;
    if (m_cmp >= 0)
      verdict.global_existence = GlobalExistence::Guaranteed;
    else if (any_t3)
      verdict.global_existence = GlobalExistence::GuaranteedIfBoundedOpen;
  }
  return verdict;
}

void write_verdict_text(std::ostream& os, const ModelParams& p, const RegimeVerdict& v) {
  os << "parameters: chi0=" << p.chi0 << " m=" << p.m << " beta=" << p.beta << " alpha=" << p.alpha
     << " gamma=" << p.gamma << " a=" << p.a << " b=" << p.b << " mu=" << p.mu << " nu=" << p.nu
     << " N=" << p.dim << '\n';
  os << "boundedness: " << to_string(v.boundedness) << '\n';
  os << "global existence: " << to_string(v.global_existence) << '\n';
  os << "rules fired: " << (v.rules_fired.empty() ? "(none)" : v.rules_text()) << '\n';
  for (const auto& t : v.thresholds)
    os << "threshold " << rule_id(t.rule) << ": chi0 < " << t.threshold.to_string()
       << (t.satisfied ? "  [satisfied]" : "  [violated]") << '\n';
  for (const auto& c : v.caveats) os << "caveat: " << c << '\n';
}

void write_verdict_csv(std::ostream& os, const RegimeVerdict& v) {
  os << "boundedness,global_existence,rules_fired,rule,threshold,satisfied\n";
  if (v.thresholds.empty()) {
    os << to_string(v.boundedness) << ',' << to_string(v.global_existence) << ',' << v.rules_text() << ",,,\n";
    return;
  }
  for (const auto& t : v.thresholds)
    os << to_string(v.boundedness) << ',' << to_string(v.global_existence) << ',' << v.rules_text() << ','
       << rule_id(t.rule) << ',' << t.threshold.to_string() << ',' << (t.satisfied ? 1 : 0) << '\n';
}

// ---------------------------------------------------------------- sweeps

Rational SweepAxis::node(int i) const {
  return lo + (hi - lo) * Rational(i, resolution - 1);
}

RegionTable region_sweep(const ModelParams& fixed, const SweepAxis& x_axis, const SweepAxis& y_axis,
                         const EllipticConstantModel& c_model, int jobs) {
  for (const SweepAxis* axis : {&x_axis, &y_axis}) {
    if (!is_parameter_name(axis->name))
      throw std::invalid_argument("unknown sweep axis '" + axis->name + "'");
    if (axis->resolution < 8) throw std::invalid_argument("sweep resolution must be >= 8 per axis");
  }
  if (x_axis.name == y_axis.name) throw std::invalid_argument("sweep axes must be distinct");

  RegionTable table{x_axis, y_axis, {}};
  const auto total = static_cast<std::size_t>(x_axis.resolution) * static_cast<std::size_t>(y_axis.resolution);
  table.cells.resize(total);
  for (int j = 0; j < y_axis.resolution; ++j)
    for (int i = 0; i < x_axis.resolution; ++i) {
      auto& cell = table.cells[static_cast<std::size_t>(j * x_axis.resolution + i)];
      cell.x = x_axis.node(i);
      cell.y = y_axis.node(j);
    }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      ModelParams p = fixed;
      set_parameter(p, x_axis.name, table.cells[k].x);
      set_parameter(p, y_axis.name, table.cells[k].y);
      table.cells[k].verdict = classify(p, c_model);
    }
  };
  const int workers = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return table;
}

void write_region_csv(std::ostream& os, const RegionTable& table) {
  os << table.x_axis.name << ',' << table.y_axis.name
     << ",boundedness,global_existence,rules_fired,binding_threshold\n";
  for (const auto& cell : table.cells) {
    const auto binding = cell.verdict.binding_threshold();
    os << format_decimal(cell.x) << ',' << format_decimal(cell.y) << ','
       << (cell.verdict.boundedness == Boundedness::Guaranteed ? 1 : 0) << ','
       << to_string(cell.verdict.global_existence) << ',' << cell.verdict.rules_text() << ','
       << (binding ? binding->to_string() : std::string()) << '\n';
  }
}

}  // namespace chemotaxis
