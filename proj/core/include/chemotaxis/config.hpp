#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chemotaxis/constants.hpp"
#include "chemotaxis/grid.hpp"
#include "chemotaxis/model_params.hpp"
#include "chemotaxis/regime.hpp"
#include "chemotaxis/sim_state.hpp"

namespace chemotaxis {

enum class Mode { Simulate, Classify, Sweep, Curves, Verify };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

/// Line-numbered configuration failure; `line` is 0 for whole-file invariants.
class ConfigError : public std::runtime_error {
 public:
  enum class Kind { UnknownKey, MalformedValue, ParameterConstraint, InvariantViolation };

  ConfigError(Kind kind, int line, const std::string& message);

  Kind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

std::string_view to_string(ConfigError::Kind kind);

/// How the elliptic-regularity constant C_{N,p} is supplied.
struct EllipticSpec {
  enum class Source { Default, User, Empirical };
  Source source = Source::Default;
  double value = 1.0;
  int trials = 200;
  std::uint64_t seed = 1;

  EllipticConstantModel model(int dim) const;
  bool operator==(const EllipticSpec&) const = default;
};

struct GridSpec {
  int dim = 1;
  double lx = 1.0;
  double ly = 1.0;
  int nx = 256;
  int ny = 64;

  Grid grid() const;
  bool operator==(const GridSpec&) const = default;
};

/// Initial density: constant, constant + amplitude·Π cos(k π x / L), or a snapshot file.
struct InitialCondition {
  enum class Kind { Constant, Cosine, File };
  Kind kind = Kind::Constant;
  double level = 1.0;
  double amplitude = 0.0;
  int mode_x = 1;
  int mode_y = 0;
  std::string path;

  bool operator==(const InitialCondition&) const = default;
};

struct OutputSpec {
  std::string trajectory = "trajectory.csv";
  std::string report = "report.csv";
  std::vector<double> snapshot_times;

  bool operator==(const OutputSpec&) const = default;
};

struct CurvesSpec {
  double beta_lo = 0.0;
  double beta_hi = 6.4;
  int resolution = 400;

  bool operator==(const CurvesSpec&) const = default;
};

struct SweepSpec {
  SweepAxis x{"m", 0, 3, 13};
  SweepAxis y{"alpha", 0, 3, 13};

  bool operator==(const SweepSpec& o) const {
    auto same = [](const SweepAxis& a, const SweepAxis& b) {
      return a.name == b.name && a.lo == b.lo && a.hi == b.hi && a.resolution == b.resolution;
    };
    return same(x, o.x) && same(y, o.y);
  }
};

struct RunConfig {
  Mode mode = Mode::Simulate;
  ModelParams model;
  EllipticSpec elliptic;
  GridSpec grid;
  InitialCondition ic;
  StepperConfig stepper;
  double t_final = 1.0;
  OutputSpec outputs;
  SweepSpec sweep;
  CurvesSpec curves;

  bool operator==(const RunConfig&) const = default;
};

/// Parses `section.key = value` lines ('#' starts a comment). Model values are
/// read as exact decimals so borderline exponent relations are decided exactly.
/// Throws ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig parse_config_file(const std::string& path);

/// Text that parse_config maps back to an equal RunConfig.
std::string emit_config(const RunConfig& config);

/// Samples the initial density on the configured grid. Throws ConfigError
/// (InvariantViolation) unless min u0 > 0.
Field build_initial_condition(const RunConfig& config);

}  // namespace chemotaxis
