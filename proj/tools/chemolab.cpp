#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chemotaxis/config.hpp"
#include "chemotaxis/diagnostics.hpp"
#include "chemotaxis/dynamics.hpp"
#include "chemotaxis/errors.hpp"
#include "chemotaxis/field_io.hpp"
#include "chemotaxis/outputs.hpp"
#include "chemotaxis/regime.hpp"
#include "chemotaxis/verification.hpp"

namespace fs = std::filesystem;
using namespace chemotaxis;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRun = 3;
constexpr int kExitVerify = 4;

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

class Outputs {
 public:
  Outputs(const fs::path& dir, const RunConfig& cfg, const Options& opt) : dir_(dir), cfg_(cfg), opt_(opt) {
    fs::create_directories(dir_);
  }

  fs::path path(const std::string& name) {
    const fs::path p = fs::path(name).is_absolute() ? fs::path(name) : dir_ / name;
    files_.push_back(p.string());
    return p;
  }

  std::ofstream open(const std::string& name) {
    std::ofstream os(path(name));
    if (!os) throw std::runtime_error("cannot write " + (dir_ / name).string());
    return os;
  }

  void write_manifest() {
    const std::string text = emit_config(cfg_);
    char hash[20];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
    nlohmann::json manifest = {
        {"version", library_version()},
        {"mode", std::string(to_string(cfg_.mode))},
        {"config_hash", hash},
        {"seed", cfg_.elliptic.seed},
        {"jobs", opt_.jobs},
        {"outputs", files_},
    };
    std::ofstream os(dir_ / "manifest.json");
    os << manifest.dump(2) << '\n';
    std::ofstream cfg_out(dir_ / "config.resolved");
    cfg_out << text;
  }

 private:
  fs::path dir_;
  const RunConfig& cfg_;
  const Options& opt_;
  std::vector<std::string> files_;
};

RunConfig load_config(const Options& opt, Mode mode) {
  RunConfig cfg = opt.config_path.empty() ? parse_config("") : parse_config_file(opt.config_path);
  cfg.mode = mode;
  if (opt.seed) cfg.elliptic.seed = *opt.seed;
  return cfg;
}

int simulate(const RunConfig& cfg, Outputs& out) {
  if (cfg.model.dim > 2) throw ConfigError(ConfigError::Kind::InvariantViolation, 0, "simulation supports model.dim 1 or 2");
  const Field u0 = build_initial_condition(cfg);
  if (u0.grid().dim() != cfg.model.dim)
    throw ConfigError(ConfigError::Kind::InvariantViolation, 0, "initial condition grid does not match model.dim");
  const EllipticConstantModel c_model = cfg.elliptic.model(cfg.model.dim);
  RunOptions options;
  options.snapshot_times = cfg.outputs.snapshot_times;
  options.c_model = c_model;
  const RunOutcome outcome = run(u0, cfg.model, cfg.stepper, cfg.t_final, options);
  const RegimeVerdict verdict = classify(cfg.model, c_model);
  const CheckReport report = check_trajectory(outcome.trajectory, cfg.model, verdict);

  {
    auto os = out.open(cfg.outputs.trajectory);
    write_trajectory_csv(os, outcome.trajectory);
  }
  {
    auto os = out.open(cfg.outputs.report);
    write_report_csv(os, report);
  }
  for (const auto& snap : outcome.snapshots) {
    char name[64];
    std::snprintf(name, sizeof name, "snapshot_t%.6g.csv", snap.t);
    write_snapshot_file(out.path(name).string(), snap.field, snap.t);
  }

  std::cout << "status: " << to_string(outcome.status) << '\n'
            << "t_final: " << outcome.t_final << '\n'
            << "peak sup u: " << outcome.peak_sup << '\n'
            << "steps: " << outcome.final_state.accepted_steps << " accepted, " << outcome.final_state.rejected_steps
            << " rejected\n"
            << "growth exponent: " << outcome.growth_exponent << '\n';
  if (outcome.extinction_observed) std::cout << "note: min u fell below the extinction floor\n";
  std::cout << "regime: " << to_string(verdict.boundedness) << " ["
            << (verdict.rules_fired.empty() ? "none" : verdict.rules_text()) << "]\n";
  write_report_text(std::cout, report);
  out.write_manifest();

  if (outcome.status == RunStatus::StepSizeUnderflow || outcome.status == RunStatus::PositivityFailure) return kExitRun;
  return report.passed() ? kExitOk : kExitVerify;
}

int classify_mode(const RunConfig& cfg, Outputs& out) {
  const RegimeVerdict verdict = classify(cfg.model, cfg.elliptic.model(cfg.model.dim));
  write_verdict_text(std::cout, cfg.model, verdict);
  auto os = out.open("verdict.csv");
  write_verdict_csv(os, verdict);
  os.close();
  out.write_manifest();
  return kExitOk;
}

int sweep_mode(const RunConfig& cfg, const Options& opt, Outputs& out) {
  RegionTable table;
  try {
    table = region_sweep(cfg.model, cfg.sweep.x, cfg.sweep.y, cfg.elliptic.model(cfg.model.dim), opt.jobs);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(ConfigError::Kind::InvariantViolation, 0, e.what());
  }
  auto os = out.open("region.csv");
  write_region_csv(os, table);
  os.close();
  std::size_t guaranteed = 0;
  for (const auto& c : table.cells) guaranteed += c.verdict.boundedness == Boundedness::Guaranteed;
  std::cout << "sweep " << cfg.sweep.x.name << " x " << cfg.sweep.y.name << ": " << table.cells.size() << " cells, "
            << guaranteed << " with guaranteed boundedness\n";
  out.write_manifest();
  return kExitOk;
}

int curves_mode(const RunConfig& cfg, Outputs& out) {
  const auto rows = curve_rows(cfg.curves.beta_lo, cfg.curves.beta_hi, cfg.curves.resolution);
  auto os = out.open("curves.csv");
  emit_curves(os, rows);
  os.close();
  std::cout << "wrote " << rows.size() << " rows\n";
  out.write_manifest();
  return kExitOk;
}

int verify_mode(const Options& opt, Outputs& out) {
  const auto results = run_property_suite(opt.jobs);
  write_property_results(std::cout, results);
  auto os = out.open("verify.txt");
  write_property_results(os, results);
  os.close();
  out.write_manifest();
  for (const auto& r : results)
    if (!r.passed) return kExitVerify;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for a parabolic-elliptic chemotaxis system"};
  app.set_version_flag("--version", library_version());
  app.require_subcommand(1);
  Options opt;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", opt.config_path, "configuration file (section.key = value)");
    if (config_required) c->required();
    c->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "seed for the empirical elliptic constant");
    sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto* sim = app.add_subcommand("simulate", "run a simulation and check its trajectory");
  auto* cls = app.add_subcommand("classify", "report which boundedness results apply");
  auto* swp = app.add_subcommand("sweep", "classify a two-parameter grid");
  auto* crv = app.add_subcommand("curves", "tabulate psi, theta and theta(2 beta - 1)");
  auto* ver = app.add_subcommand("verify", "run the built-in property suite");
  add_common(sim, true);
  add_common(cls, true);
  add_common(swp, true);
  add_common(crv, false);
  add_common(ver, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  for (auto* sub : {sim, cls, swp, crv, ver})
    if (sub->parsed() && sub->count("--seed") > 0) opt.seed = seed;

  const Mode mode = sim->parsed()   ? Mode::Simulate
                    : cls->parsed() ? Mode::Classify
                    : swp->parsed() ? Mode::Sweep
                    : crv->parsed() ? Mode::Curves
                                    : Mode::Verify;
  try {
    const RunConfig cfg = load_config(opt, mode);
    Outputs out(opt.out_dir, cfg, opt);
    switch (mode) {
      case Mode::Simulate: return simulate(cfg, out);
      case Mode::Classify: return classify_mode(cfg, out);
      case Mode::Sweep: return sweep_mode(cfg, opt, out);
      case Mode::Curves: return curves_mode(cfg, out);
      case Mode::Verify: return verify_mode(opt, out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParameterError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "run failure: " << e.what() << '\n';
    return kExitRun;
  }
  return kExitOk;
}
