#include "chemotaxis/constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "chemotaxis/errors.hpp"

namespace chemotaxis {

// ---------------------------------------------------------------- ExtendedReal

double ExtendedReal::value() const {
  if (infinite_) throw std::logic_error("ExtendedReal::value() on +infinity");
  return value_;
}

double ExtendedReal::as_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

std::string ExtendedReal::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

// ---------------------------------------------------------------- ModelParams

Rational parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  const auto fail = [&] {
    throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
  };
  if (text.empty()) fail();
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  boost::multiprecision::cpp_int digits = 0;
  int frac_digits = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) fail();
  long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') fail();
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size()) fail();
    for (; pos < text.size(); ++pos) {
      const char c = text[pos];
      if (c < '0' || c > '9') fail();
      exponent = exponent * 10 + (c - '0');
      if (exponent > 400) fail();
    }
    if (exp_negative) exponent = -exponent;
  }
  const long shift = exponent - frac_digits;
  boost::multiprecision::cpp_int scale = boost::multiprecision::pow(
      boost::multiprecision::cpp_int(10), static_cast<unsigned>(std::labs(shift)));
  Rational r = shift >= 0 ? Rational(digits * scale) : Rational(digits, scale);
  return negative ? Rational(-r) : r;
}

std::string format_decimal(const Rational& value) {
  using boost::multiprecision::cpp_int;
  cpp_int den = boost::multiprecision::denominator(value);
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", to_double(value));
    return buf;
  }
  const int places = std::max(twos, fives);
  const cpp_int scale = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(places));
  cpp_int scaled = boost::multiprecision::numerator(value) * scale /
                   boost::multiprecision::denominator(value);
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.str();
  if (places > 0) {
    if (static_cast<int>(digits.size()) <= places)
      digits.insert(0, static_cast<std::size_t>(places + 1 - static_cast<int>(digits.size())), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  return negative ? "-" + digits : digits;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

void ModelParams::validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) throw ParameterError(std::string("parameter constraint violated: ") + what);
  };
  require(std::isfinite(chi0), "chi0 must be finite");
  require(m > 0.0 && std::isfinite(m), "m > 0");
  require(alpha > 0.0 && std::isfinite(alpha), "alpha > 0");
  require(gamma > 0.0 && std::isfinite(gamma), "gamma > 0");
  require(mu > 0.0 && std::isfinite(mu), "mu > 0");
  require(nu > 0.0 && std::isfinite(nu), "nu > 0");
  require(beta >= 0.0 && std::isfinite(beta), "beta >= 0");
  require(a >= 0.0 && std::isfinite(a), "a >= 0");
  require(b >= 0.0 && std::isfinite(b), "b >= 0");
  require(dim >= 1 && dim <= 3, "dimension N in {1, 2, 3}");
}

double ModelParams::carrying_capacity() const {
  if (!(b > 0.0)) throw DomainError("carrying capacity (a/b)^{1/alpha} needs b > 0");
  return std::pow(a / b, 1.0 / alpha);
}

ModelParams validated(ModelParams params) {
  params.validate();
  return params;
}

namespace {

double* parameter_slot(ModelParams& params, std::string_view name) {
  if (name == "chi0") return &params.chi0;
  if (name == "m") return &params.m;
  if (name == "beta") return &params.beta;
  if (name == "alpha") return &params.alpha;
  if (name == "gamma") return &params.gamma;
  if (name == "a") return &params.a;
  if (name == "b") return &params.b;
  if (name == "mu") return &params.mu;
  if (name == "nu") return &params.nu;
  return nullptr;
}

}  // namespace

bool is_parameter_name(std::string_view name) {
  ModelParams scratch;
  return parameter_slot(scratch, name) != nullptr;
}

void set_parameter(ModelParams& params, std::string_view name, const Rational& value) {
  double* slot = parameter_slot(params, name);
  if (slot == nullptr) throw std::invalid_argument("unknown parameter '" + std::string(name) + "'");
  *slot = to_double(value);
  if (name == "m") params.exact.m = value;
  if (name == "alpha") params.exact.alpha = value;
  if (name == "gamma") params.exact.gamma = value;
  if (name == "beta") params.exact.beta = value;
}

double get_parameter(const ModelParams& params, std::string_view name) {
  ModelParams copy = params;
  const double* slot = parameter_slot(copy, name);
  if (slot == nullptr) throw std::invalid_argument("unknown parameter '" + std::string(name) + "'");
  return *slot;
}

// ---------------------------------------------------------------- Ψ and Θ

double psi(double beta) {
  if (!(beta >= 0.0)) throw DomainError("psi: beta must be >= 0");
  if (beta == 0.0) return 0.0;
  if (std::isinf(beta)) return std::exp(-1.0);
  // (1+β) log(β/(1+β)) = (1+β) log1p(−1/(1+β)), in extended precision
  const long double b = beta;
  return static_cast<double>(std::exp((1.0L + b) * std::log1p(-1.0L / (1.0L + b))));
}

double theta(double beta) {
  if (!(beta >= 0.0)) throw DomainError("theta: beta must be >= 0");
  if (beta == 0.0) return 1.0;
  if (std::isinf(beta)) return 0.0;
  const long double b = beta;
  return static_cast<double>(std::exp(b * std::log1p(-1.0L / (1.0L + b))) / (1.0L + b));
}

// ---------------------------------------------------------------- C_{N,p}

namespace {

constexpr double kPi = std::numbers::pi;

int default_cells(int dim) {
  switch (dim) {
    case 1: return 512;
    case 2: return 64;
    default: return 16;
  }
}

int default_modes(int dim) {
  switch (dim) {
    case 1: return 8;
    case 2: return 6;
    default: return 4;
  }
}

// Pointwise |v|, |Δv|, |D²v| of one trial field on the midpoint lattice.
struct TrialSamples {
  std::vector<double> value;
  std::vector<double> laplacian;
  std::vector<double> hessian;
};

TrialSamples sample_trial(const CosineTrialField& field, int cells) {
  const int dim = field.dim;
  std::size_t points = 1;
  for (int d = 0; d < dim; ++d) points *= static_cast<std::size_t>(cells);
  TrialSamples out;
  out.value.assign(points, 0.0);
  out.laplacian.assign(points, 0.0);
  out.hessian.assign(points, 0.0);

  std::vector<double> hxx(points), hyy(points), hzz(points), hxy(points), hxz(points), hyz(points);
  const double h = 1.0 / cells;
  for (std::size_t idx = 0; idx < points; ++idx) {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    std::size_t rest = idx;
    for (int d = 0; d < dim; ++d) {
      x[static_cast<std::size_t>(d)] = (static_cast<double>(rest % static_cast<std::size_t>(cells)) + 0.5) * h;
      rest /= static_cast<std::size_t>(cells);
    }
    double v = 0.0;
    std::array<std::array<double, 3>, 3> hess{};
    for (std::size_t k = 0; k < field.modes.size(); ++k) {
      const double c = field.coefficients[k];
      std::array<double, 3> w{}, cs{}, sn{};
      for (int d = 0; d < 3; ++d) {
        const auto du = static_cast<std::size_t>(d);
        w[du] = d < dim ? field.modes[k][du] * kPi : 0.0;
        cs[du] = d < dim ? std::cos(w[du] * x[du]) : 1.0;
        sn[du] = d < dim ? std::sin(w[du] * x[du]) : 0.0;
      }
      const double prod = cs[0] * cs[1] * cs[2];
      v += c * prod;
      for (std::size_t d = 0; d < 3; ++d) {
        hess[d][d] -= c * w[d] * w[d] * prod;
        for (std::size_t e = d + 1; e < 3; ++e) {
          double mixed = c * w[d] * w[e] * sn[d] * sn[e];
          for (std::size_t f = 0; f < 3; ++f)
            if (f != d && f != e) mixed *= cs[f];
          hess[d][e] += mixed;
        }
      }
    }
    double frob = 0.0;
    for (std::size_t d = 0; d < 3; ++d) {
      frob += hess[d][d] * hess[d][d];
      for (std::size_t e = d + 1; e < 3; ++e) frob += 2.0 * hess[d][e] * hess[d][e];
    }
    out.value[idx] = std::abs(v);
    out.laplacian[idx] = std::abs(hess[0][0] + hess[1][1] + hess[2][2]);
    out.hessian[idx] = std::sqrt(frob);
  }
  return out;
}

double ratio_of(const TrialSamples& s, double p) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < s.value.size(); ++i) {
    num += std::pow(s.hessian[i], p);
    den += std::pow(s.laplacian[i], p) + std::pow(s.value[i], p);
  }
  return den > 0.0 ? num / den : 0.0;
}

CosineTrialField random_trial(int dim, std::mt19937_64& rng) {
  const int kmax = default_modes(dim);
  std::uniform_int_distribution<int> sparsity(0, 3);
  std::uniform_int_distribution<int> mode_index(0, kmax - 1);
  std::uniform_real_distribution<double> decay(0.0, 1.5);
  std::normal_distribution<double> normal(0.0, 1.0);

  CosineTrialField field;
  field.dim = dim;
  const double r = decay(rng);
  const int kind = sparsity(rng);
  if (kind < 3) {
    // a handful of random modes
    for (int t = 0; t <= kind; ++t) {
      std::array<int, 3> k{0, 0, 0};
      for (int d = 0; d < dim; ++d) k[static_cast<std::size_t>(d)] = mode_index(rng);
      field.modes.push_back(k);
    }
  } else {
    // dense block of all modes
    const int total = static_cast<int>(std::pow(kmax, dim));
    for (int idx = 0; idx < total; ++idx) {
      std::array<int, 3> k{0, 0, 0};
      int rest = idx;
      for (int d = 0; d < dim; ++d) {
        k[static_cast<std::size_t>(d)] = rest % kmax;
        rest /= kmax;
      }
      field.modes.push_back(k);
    }
  }
  for (const auto& k : field.modes) {
    const double k2 = static_cast<double>(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    field.coefficients.push_back(normal(rng) / std::pow(1.0 + k2, r));
  }
  return field;
}

std::vector<TrialSamples> sample_trials(int dim, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TrialSamples> out;
  out.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) out.push_back(sample_trial(random_trial(dim, rng), default_cells(dim)));
  return out;
}

void check_estimator_args(int dim, double p, int trials) {
  if (dim < 1 || dim > 3) throw DomainError("estimate_c_star: dimension must be 1, 2 or 3");
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("estimate_c_star: p must be > 1");
  if (trials < 1) throw DomainError("estimate_c_star: trials must be >= 1");
}

}  // namespace

double regularity_ratio(const CosineTrialField& field, double p, int cells) {
  if (field.dim < 1 || field.dim > 3) throw DomainError("regularity_ratio: dimension must be 1, 2 or 3");
  if (field.modes.size() != field.coefficients.size())
    throw PreconditionError("regularity_ratio: modes/coefficients size mismatch");
  if (!(p >= 1.0)) throw DomainError("regularity_ratio: p must be >= 1");
  return ratio_of(sample_trial(field, cells > 0 ? cells : default_cells(field.dim)), p);
}

double estimate_c_star(int dim, double p, int trials, std::uint64_t seed) {
  check_estimator_args(dim, p, trials);
  double best = 0.0;
  for (const auto& s : sample_trials(dim, trials, seed)) best = std::max(best, ratio_of(s, p));
  return best;
}

struct EllipticConstantModel::Cache {
  std::mutex mutex;
  std::map<int, std::shared_ptr<const std::vector<TrialSamples>>> samples;
  std::map<std::pair<int, double>, double> values;
};

EllipticConstantModel EllipticConstantModel::user(double value) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw DomainError("elliptic constant must be a positive finite number");
  EllipticConstantModel model;
  model.user_value_ = value;
  return model;
}

EllipticConstantModel EllipticConstantModel::empirical(int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("empirical elliptic constant needs trials >= 1");
  EllipticConstantModel model;
  model.trials_ = trials;
  model.seed_ = seed;
  model.cache_ = std::make_shared<Cache>();
  return model;
}

EllipticConstantModel EllipticConstantModel::default_for(int dim) {
  return dim == 1 ? user(1.0) : empirical(200, 1);
}

double EllipticConstantModel::value(int dim, double p) const {
  if (user_value_) return *user_value_;
  check_estimator_args(dim, p, trials_);
  std::shared_ptr<const std::vector<TrialSamples>> samples;
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->values.find({dim, p}); it != cache_->values.end()) return it->second;
    if (auto it = cache_->samples.find(dim); it != cache_->samples.end()) samples = it->second;
  }
  if (!samples) {
    auto fresh = std::make_shared<const std::vector<TrialSamples>>(sample_trials(dim, trials_, seed_));
    std::lock_guard lock(cache_->mutex);
    samples = cache_->samples.emplace(dim, std::move(fresh)).first->second;
  }
  double best = 0.0;
  for (const auto& s : *samples) best = std::max(best, ratio_of(s, p));
  std::lock_guard lock(cache_->mutex);
  cache_->values.emplace(std::make_pair(dim, p), best);
  return best;
}

std::string EllipticConstantModel::describe() const {
  std::ostringstream os;
  if (user_value_) {
    os << "user constant C=" << *user_value_;
  } else {
    os << "empirical lower bound (trials=" << trials_ << ", seed=" << seed_ << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------- M*, K

double m_star(int dim, double p, double mu, double nu, const EllipticConstantModel& c_model) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("m_star: p must be > 1");
  if (!(mu > 0.0) || !(nu > 0.0)) throw DomainError("m_star: mu and nu must be > 0");
  const double c = c_model.value(dim, p);
  const double regularity = std::pow(8.0, p) / p * c * (std::pow(2.0, p) + std::pow(mu, -p));
  const double interpolation = std::pow(2.0, 2.0 * p) / ((p - 1.0) * std::pow(p, p));
  return std::pow(nu, p) * (regularity + interpolation);
}

double q_star(int dim, double alpha) { return std::max(1.0, dim * alpha / 2.0); }

namespace {

void check_rates(double alpha, double gamma, double mu, double nu) {
  if (!(alpha > 0.0) || !(gamma > 0.0) || !(mu > 0.0) || !(nu > 0.0))
    throw DomainError("k_constant: alpha, gamma, mu, nu must be > 0");
}

}  // namespace

ExtendedReal k_constant(int dim, double alpha, double gamma, double mu, double nu,
                        const EllipticConstantModel& c_model) {
  check_rates(alpha, gamma, mu, nu);
  const double q = q_star(dim, alpha);
  const double p = (q + alpha) / gamma;
  if (!(p > 1.0)) return ExtendedReal::infinity();
  return ExtendedReal(std::pow(m_star(dim, p, mu, nu, c_model), 1.0 / p));
}

std::vector<double> k_sequence(int dim, double alpha, double gamma, double mu, double nu,
                               const EllipticConstantModel& c_model, int terms) {
  check_rates(alpha, gamma, mu, nu);
  if (terms < 1) throw DomainError("k_sequence: terms must be >= 1");
  const double qs = q_star(dim, alpha);
  std::vector<double> out;
  for (int j = 1; j <= terms; ++j) {
    const double q = qs * (1.0 + std::ldexp(1.0, -j));
    const double p = (q + alpha) / gamma;
    out.push_back(p > 1.0 ? std::pow(m_star(dim, p, mu, nu, c_model), gamma / (q + alpha))
                          : std::numeric_limits<double>::infinity());
  }
  return out;
}

ChiThresholds chi_thresholds(const ModelParams& params, const EllipticConstantModel& c_model) {
  params.validate();
  ChiThresholds out;
  const int n = params.dim;
  const double ng = n * params.gamma;
  out.chiw = 2.0 * (2.0 * params.beta - 1.0) / std::max(2.0, ng);
  out.chiw_is_guarantee = params.beta >= 1.0;
  if (!out.chiw_is_guarantee) out.notes.emplace_back("chiw: beta < 1, not a guarantee");

  const bool slice = params.m == 1.0 && params.alpha == params.gamma && params.positive_logistic();
  if (!slice) {
    out.notes.emplace_back("chi1/chi2: require m = 1, alpha = gamma, a, b > 0");
    return out;
  }
  if (ng <= 2.0) {
    out.chi1 = ExtendedReal::infinity();
    if (params.beta >= 0.5) out.chi2 = ExtendedReal::infinity();
  } else {
    const ExtendedReal k = k_constant(n, params.gamma, params.gamma, params.mu, params.nu, c_model);
    out.uses_empirical_c = c_model.is_empirical();
    if (k.is_infinite()) {
      out.chi1 = ExtendedReal(0.0);
      if (params.beta >= 0.5) out.chi2 = ExtendedReal(0.0);
    } else {
      out.chi1 = ExtendedReal(ng * params.b / ((ng - 2.0) * (params.nu + psi(params.beta) * k.value())));
      if (params.beta >= 0.5)
        out.chi2 = ExtendedReal(
            std::sqrt(8.0 * params.b / ((ng - 2.0) * theta(2.0 * params.beta - 1.0) * k.value())));
    }
  }
  if (!out.chi2) out.notes.emplace_back("chi2: requires beta >= 1/2");
  if (out.uses_empirical_c) out.notes.emplace_back("thresholds use an empirical C_{N,p}; indicative, not certified");
  return out;
}

}  // namespace chemotaxis
