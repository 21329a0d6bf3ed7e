#include "chemotaxis/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "chemotaxis/errors.hpp"
#include "chemotaxis/field_io.hpp"

namespace chemotaxis {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Simulate: return "simulate";
    case Mode::Classify: return "classify";
    case Mode::Sweep: return "sweep";
    case Mode::Curves: return "curves";
    case Mode::Verify: return "verify";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view text) {
  for (Mode m : {Mode::Simulate, Mode::Classify, Mode::Sweep, Mode::Curves, Mode::Verify})
    if (to_string(m) == text) return m;
  return std::nullopt;
}

ConfigError::ConfigError(Kind kind, int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      kind_(kind),
      line_(line) {}

std::string_view to_string(ConfigError::Kind kind) {
  switch (kind) {
    case ConfigError::Kind::UnknownKey: return "unknown key";
    case ConfigError::Kind::MalformedValue: return "malformed value";
    case ConfigError::Kind::ParameterConstraint: return "parameter constraint";
    case ConfigError::Kind::InvariantViolation: return "invariant violation";
  }
  return "?";
}

EllipticConstantModel EllipticSpec::model(int dim) const {
  switch (source) {
    case Source::User: return EllipticConstantModel::user(value);
    case Source::Empirical: return EllipticConstantModel::empirical(trials, seed);
    case Source::Default: break;
  }
  return EllipticConstantModel::default_for(dim);
}

Grid GridSpec::grid() const { return dim == 1 ? Grid::line(lx, nx) : Grid::rectangle(lx, ly, nx, ny); }

namespace {

using Kind = ConfigError::Kind;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text, int line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw ConfigError(Kind::MalformedValue, line, "expected a finite real, got '" + std::string(text) + "'");
  return value;
}

long long parse_integer(std::string_view text, int line) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError(Kind::MalformedValue, line, "expected an integer, got '" + std::string(text) + "'");
  return value;
}

Rational parse_exact(std::string_view text, int line) {
  try {
    return parse_decimal(text);
  } catch (const std::invalid_argument&) {
    throw ConfigError(Kind::MalformedValue, line, "expected a decimal number, got '" + std::string(text) + "'");
  }
}

std::string real_text(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

std::string model_text(const ModelParams& p, std::string_view name) {
  const std::optional<Rational>* exact = nullptr;
  if (name == "m") exact = &p.exact.m;
  if (name == "alpha") exact = &p.exact.alpha;
  if (name == "gamma") exact = &p.exact.gamma;
  if (name == "beta") exact = &p.exact.beta;
  if (exact != nullptr && exact->has_value()) {
    const std::string text = format_decimal(**exact);
    if (parse_decimal(text) == **exact) return text;
  }
  return real_text(get_parameter(p, name));
}

void require(bool ok, Kind kind, int line, const std::string& message) {
  if (!ok) throw ConfigError(kind, line, message);
}

struct Parser {
  RunConfig cfg;
  std::map<std::string, int, std::less<>> seen;

  int line_of(std::string_view key) const {
    const auto it = seen.find(key);
    return it == seen.end() ? 0 : it->second;
  }

  void set(std::string_view key, std::string_view value, int line) {
    const auto dot = key.find('.');
    if (dot == std::string_view::npos) throw ConfigError(Kind::UnknownKey, line, "unknown key '" + std::string(key) + "'");
    const std::string_view section = key.substr(0, dot);
    const std::string_view name = key.substr(dot + 1);
    auto unknown = [&] { throw ConfigError(Kind::UnknownKey, line, "unknown key '" + std::string(key) + "'"); };
    auto positive = [&](double x) {
      require(x > 0.0, Kind::ParameterConstraint, line, std::string(key) + " must be > 0");
      return x;
    };
    auto nonnegative = [&](double x) {
      require(x >= 0.0, Kind::ParameterConstraint, line, std::string(key) + " must be >= 0");
      return x;
    };
    auto integer_at_least = [&](long long lo) {
      const long long v = parse_integer(value, line);
      require(v >= lo, Kind::ParameterConstraint, line, std::string(key) + " must be >= " + std::to_string(lo));
      require(v <= 1'000'000'000, Kind::ParameterConstraint, line, std::string(key) + " is too large");
      return static_cast<int>(v);
    };

    if (section == "run") {
      if (name == "mode") {
        const auto m = parse_mode(value);
        require(m.has_value(), Kind::MalformedValue, line, "unknown mode '" + std::string(value) + "'");
        cfg.mode = *m;
      } else if (name == "t_final") {
        cfg.t_final = positive(parse_real(value, line));
      } else {
        unknown();
      }
    } else if (section == "model") {
      if (name == "dim") {
        const long long d = parse_integer(value, line);
        require(d >= 1 && d <= 3, Kind::ParameterConstraint, line, "model.dim must be 1, 2 or 3");
        cfg.model.dim = static_cast<int>(d);
        return;
      }
      if (!is_parameter_name(name)) unknown();
      const Rational exact = parse_exact(value, line);
      const double x = parse_real(value, line);
      if (name == "m" || name == "alpha" || name == "gamma" || name == "mu" || name == "nu")
        require(exact > 0, Kind::ParameterConstraint, line, "model." + std::string(name) + " must be > 0");
      else if (name != "chi0")
        require(exact >= 0, Kind::ParameterConstraint, line, "model." + std::string(name) + " must be >= 0");
      set_parameter(cfg.model, name, exact);
      if (name == "chi0") cfg.model.chi0 = x;
      if (name == "m") cfg.model.m = x;
      if (name == "beta") cfg.model.beta = x;
      if (name == "alpha") cfg.model.alpha = x;
      if (name == "gamma") cfg.model.gamma = x;
      if (name == "a") cfg.model.a = x;
      if (name == "b") cfg.model.b = x;
      if (name == "mu") cfg.model.mu = x;
      if (name == "nu") cfg.model.nu = x;
    } else if (section == "elliptic") {
      auto& e = cfg.elliptic;
      if (name == "source") {
        if (value == "default") e.source = EllipticSpec::Source::Default;
        else if (value == "user") e.source = EllipticSpec::Source::User;
        else if (value == "empirical") e.source = EllipticSpec::Source::Empirical;
        else throw ConfigError(Kind::MalformedValue, line, "elliptic.source must be default, user or empirical");
      } else if (name == "value") {
        e.value = positive(parse_real(value, line));
      } else if (name == "trials") {
        e.trials = integer_at_least(1);
      } else if (name == "seed") {
        const long long s = parse_integer(value, line);
        require(s >= 0, Kind::ParameterConstraint, line, "elliptic.seed must be >= 0");
        e.seed = static_cast<std::uint64_t>(s);
      } else {
        unknown();
      }
    } else if (section == "grid") {
      auto& g = cfg.grid;
      if (name == "dim") {
        const long long d = parse_integer(value, line);
        require(d == 1 || d == 2, Kind::ParameterConstraint, line, "grid.dim must be 1 or 2");
        g.dim = static_cast<int>(d);
      } else if (name == "lx") g.lx = positive(parse_real(value, line));
      else if (name == "ly") g.ly = positive(parse_real(value, line));
      else if (name == "nx") g.nx = integer_at_least(4);
      else if (name == "ny") g.ny = integer_at_least(4);
      else unknown();
    } else if (section == "ic") {
      auto& ic = cfg.ic;
      if (name == "kind") {
        if (value == "constant") ic.kind = InitialCondition::Kind::Constant;
        else if (value == "cosine") ic.kind = InitialCondition::Kind::Cosine;
        else if (value == "file") ic.kind = InitialCondition::Kind::File;
        else throw ConfigError(Kind::MalformedValue, line, "ic.kind must be constant, cosine or file");
      } else if (name == "level") ic.level = parse_real(value, line);
      else if (name == "amplitude") ic.amplitude = parse_real(value, line);
      else if (name == "mode_x") ic.mode_x = integer_at_least(0);
      else if (name == "mode_y") ic.mode_y = integer_at_least(0);
      else if (name == "path") ic.path = std::string(value);
      else unknown();
    } else if (section == "stepper") {
      auto& s = cfg.stepper;
      if (name == "cfl") s.cfl = positive(parse_real(value, line));
      else if (name == "dt_min") s.dt_min = positive(parse_real(value, line));
      else if (name == "dt_init") s.dt_init = positive(parse_real(value, line));
      else if (name == "dt_max") s.dt_max = positive(parse_real(value, line));
      else if (name == "blowup_cap") s.blowup_cap = nonnegative(parse_real(value, line));
      else if (name == "extinction_floor") s.extinction_floor = nonnegative(parse_real(value, line));
      else if (name == "steady_tol") s.steady_tol = nonnegative(parse_real(value, line));
      else if (name == "u_floor") s.u_floor = positive(parse_real(value, line));
      else if (name == "steady_window") s.steady_window = integer_at_least(1);
      else if (name == "max_halvings") s.max_halvings = integer_at_least(0);
      else if (name == "scheme") {
        if (value == "upwind") s.scheme = FluxScheme::Upwind;
        else if (value == "central") s.scheme = FluxScheme::Central;
        else throw ConfigError(Kind::MalformedValue, line, "stepper.scheme must be upwind or central");
      } else unknown();
    } else if (section == "outputs") {
      auto& o = cfg.outputs;
      if (name == "trajectory") o.trajectory = std::string(value);
      else if (name == "report") o.report = std::string(value);
      else if (name == "snapshot_times") {
        o.snapshot_times.clear();
        std::string_view rest = value;
        while (!rest.empty()) {
          const auto comma = rest.find(',');
          const std::string_view item = trim(rest.substr(0, comma));
          o.snapshot_times.push_back(nonnegative(parse_real(item, line)));
          if (comma == std::string_view::npos) break;
          rest = rest.substr(comma + 1);
        }
      } else unknown();
    } else if (section == "sweep") {
      SweepAxis* axis = nullptr;
      std::string_view field;
      if (name.starts_with("x")) axis = &cfg.sweep.x;
      if (name.starts_with("y")) axis = &cfg.sweep.y;
      if (axis == nullptr) unknown();
      field = name.substr(1);
      if (field.empty()) {
        require(is_parameter_name(value), Kind::MalformedValue, line, "unknown sweep parameter '" + std::string(value) + "'");
        axis->name = std::string(value);
      } else if (field == "_lo") axis->lo = parse_exact(value, line);
      else if (field == "_hi") axis->hi = parse_exact(value, line);
      else if (field == "_resolution") axis->resolution = integer_at_least(8);
      else unknown();
    } else if (section == "curves") {
      auto& c = cfg.curves;
      if (name == "beta_lo") c.beta_lo = nonnegative(parse_real(value, line));
      else if (name == "beta_hi") c.beta_hi = nonnegative(parse_real(value, line));
      else if (name == "resolution") c.resolution = integer_at_least(2);
      else unknown();
    } else {
      unknown();
    }
  }

  void finish() {
    auto invariant = [&](bool ok, std::string_view key, const std::string& message) {
      if (!ok) throw ConfigError(Kind::InvariantViolation, line_of(key), message);
    };
    const bool grid_dim_given = seen.count("grid.dim") > 0;
    const bool model_dim_given = seen.count("model.dim") > 0;
    if (!grid_dim_given && cfg.model.dim <= 2) cfg.grid.dim = cfg.model.dim;
    if (!model_dim_given && grid_dim_given) cfg.model.dim = cfg.grid.dim;
    invariant(cfg.model.dim > 2 || cfg.model.dim == cfg.grid.dim, "grid.dim",
              "grid.dim must equal model.dim");

    auto fill_exact = [](std::optional<Rational>& slot, double value) {
      if (!slot) slot = parse_decimal(real_text(value));
    };
    fill_exact(cfg.model.exact.m, cfg.model.m);
    fill_exact(cfg.model.exact.alpha, cfg.model.alpha);
    fill_exact(cfg.model.exact.gamma, cfg.model.gamma);
    fill_exact(cfg.model.exact.beta, cfg.model.beta);
    try {
      cfg.model.validate();
    } catch (const ParameterError& e) {
      throw ConfigError(Kind::ParameterConstraint, 0, e.what());
    }
    try {
      cfg.stepper.validate();
    } catch (const ParameterError& e) {
      throw ConfigError(Kind::InvariantViolation, line_of("stepper.dt_init"), e.what());
    }

    const auto& ic = cfg.ic;
    if (ic.kind == InitialCondition::Kind::File) {
      invariant(!ic.path.empty(), "ic.kind", "ic.path is required for ic.kind = file");
    } else {
      invariant(ic.level > 0.0, "ic.level", "initial density must satisfy min u0 > 0 (ic.level > 0)");
      if (ic.kind == InitialCondition::Kind::Cosine)
        invariant(std::abs(ic.amplitude) < ic.level, "ic.amplitude",
                  "cosine amplitude must be smaller than ic.level so that min u0 > 0");
    }
    invariant(cfg.curves.beta_hi >= cfg.curves.beta_lo, "curves.beta_hi", "curves range is empty");
    invariant(cfg.sweep.x.name != cfg.sweep.y.name, "sweep.y", "sweep axes must be distinct");
    invariant(cfg.sweep.x.hi >= cfg.sweep.x.lo, "sweep.x_hi", "sweep.x range is empty");
    invariant(cfg.sweep.y.hi >= cfg.sweep.y.lo, "sweep.y_hi", "sweep.y range is empty");
  }
};

}  // namespace

RunConfig parse_config(std::string_view text) {
  Parser parser;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(Kind::MalformedValue, line_no, "expected 'section.key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(Kind::MalformedValue, line_no, "missing value for '" + std::string(key) + "'");
    if (parser.seen.count(key) > 0)
      throw ConfigError(Kind::MalformedValue, line_no, "duplicate key '" + std::string(key) + "'");
    parser.set(key, value, line_no);
    parser.seen.emplace(std::string(key), line_no);
  }
  parser.finish();
  return parser.cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(Kind::InvariantViolation, 0, "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string emit_config(const RunConfig& c) {
  std::ostringstream os;
  auto kv = [&](std::string_view key, const std::string& value) { os << key << " = " << value << '\n'; };
  kv("run.mode", std::string(to_string(c.mode)));
  kv("run.t_final", real_text(c.t_final));
  kv("model.dim", std::to_string(c.model.dim));
  for (const char* name : {"chi0", "m", "beta", "alpha", "gamma", "a", "b", "mu", "nu"})
    kv(std::string("model.") + name, model_text(c.model, name));

  static constexpr const char* kSources[] = {"default", "user", "empirical"};
  kv("elliptic.source", kSources[static_cast<int>(c.elliptic.source)]);
  kv("elliptic.value", real_text(c.elliptic.value));
  kv("elliptic.trials", std::to_string(c.elliptic.trials));
  kv("elliptic.seed", std::to_string(c.elliptic.seed));

  kv("grid.dim", std::to_string(c.grid.dim));
  kv("grid.lx", real_text(c.grid.lx));
  kv("grid.ly", real_text(c.grid.ly));
  kv("grid.nx", std::to_string(c.grid.nx));
  kv("grid.ny", std::to_string(c.grid.ny));

  static constexpr const char* kKinds[] = {"constant", "cosine", "file"};
  kv("ic.kind", kKinds[static_cast<int>(c.ic.kind)]);
  kv("ic.level", real_text(c.ic.level));
  kv("ic.amplitude", real_text(c.ic.amplitude));
  kv("ic.mode_x", std::to_string(c.ic.mode_x));
  kv("ic.mode_y", std::to_string(c.ic.mode_y));
  if (!c.ic.path.empty()) kv("ic.path", c.ic.path);

  const auto& s = c.stepper;
  kv("stepper.cfl", real_text(s.cfl));
  kv("stepper.dt_min", real_text(s.dt_min));
  kv("stepper.dt_init", real_text(s.dt_init));
  kv("stepper.dt_max", real_text(s.dt_max));
  kv("stepper.blowup_cap", real_text(s.blowup_cap));
  kv("stepper.extinction_floor", real_text(s.extinction_floor));
  kv("stepper.steady_tol", real_text(s.steady_tol));
  kv("stepper.u_floor", real_text(s.u_floor));
  kv("stepper.steady_window", std::to_string(s.steady_window));
  kv("stepper.max_halvings", std::to_string(s.max_halvings));
  kv("stepper.scheme", std::string(to_string(s.scheme)));

  kv("outputs.trajectory", c.outputs.trajectory);
  kv("outputs.report", c.outputs.report);
  if (!c.outputs.snapshot_times.empty()) {
    std::string list;
    for (double t : c.outputs.snapshot_times) list += (list.empty() ? "" : ",") + real_text(t);
    kv("outputs.snapshot_times", list);
  }

  for (const auto* axis : {&c.sweep.x, &c.sweep.y}) {
    const std::string prefix = axis == &c.sweep.x ? "sweep.x" : "sweep.y";
    kv(prefix, axis->name);
    kv(prefix + "_lo", format_decimal(axis->lo));
    kv(prefix + "_hi", format_decimal(axis->hi));
    kv(prefix + "_resolution", std::to_string(axis->resolution));
  }

  kv("curves.beta_lo", real_text(c.curves.beta_lo));
  kv("curves.beta_hi", real_text(c.curves.beta_hi));
  kv("curves.resolution", std::to_string(c.curves.resolution));
  return os.str();
}

Field build_initial_condition(const RunConfig& config) {
  const auto& ic = config.ic;
  Field u0 = [&] {
    if (ic.kind == InitialCondition::Kind::File) {
      Snapshot snap = [&] {
        try {
          return read_snapshot_file(ic.path);
        } catch (const std::exception& e) {
          throw ConfigError(Kind::InvariantViolation, 0, std::string("cannot read ic.path: ") + e.what());
        }
      }();
      return std::move(snap.field);
    }
    const Grid grid = config.grid.grid();
    if (ic.kind == InitialCondition::Kind::Constant) return Field(grid, ic.level);
    const double lx = grid.domain().lengths[0];
    const double ly = grid.domain().lengths[1];
    return Field::from_function(grid, [&](double x, double y) {
      double shape = std::cos(ic.mode_x * std::numbers::pi * x / lx);
      if (grid.dim() == 2) shape *= std::cos(ic.mode_y * std::numbers::pi * y / ly);
      return ic.level + ic.amplitude * shape;
    });
  }();
  if (!u0.all_finite() || !(u0.min() > 0.0))
    throw ConfigError(Kind::InvariantViolation, 0, "initial density must be finite with min u0 > 0");
  return u0;
}

}  // namespace chemotaxis
