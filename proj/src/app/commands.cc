#include "app/commands.h"

#include <CLI11.hpp>
#include <json.hpp>
#include <unistd.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "app/suites.h"
#include "malpha/config.h"
#include "malpha/dissipative_check.h"
#include "malpha/report.h"
#include "malpha/trajectory_io.h"

namespace malpha::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

// Results are written into a staging directory next to the target and
// renamed into place once complete. The manifest is the first file written.
class OutputDir {
 public:
  OutputDir(const std::string& target, const std::string& subcommand,
            const std::string& config_path, std::optional<std::uint64_t> seed)
      : target_(target) {
    if (target.empty()) throw ConfigError("--out is required");
    if (fs::exists(target)) throw ConfigError("output directory " + target + " already exists");
    staging_ = fs::path(target.back() == '/' ? target.substr(0, target.size() - 1) : target)
                   .string() +
               ".tmp-" + std::to_string(::getpid());
    fs::remove_all(staging_);
    std::error_code ec;
    fs::create_directories(staging_, ec);
    if (ec) throw IoError("cannot create " + staging_.string() + ": " + ec.message());
    json manifest = {
        {"subcommand", subcommand},
        {"config", config_path},
        {"out", target},
        {"seed", seed ? json(*seed) : json(nullptr)},
        {"version", kToolVersion},
        {"timestamp", utc_timestamp()},
    };
    write("manifest.json", manifest.dump(2) + "\n");
  }

  ~OutputDir() {
    if (!committed_) {
      std::error_code ec;
      fs::remove_all(staging_, ec);
    }
  }

  std::string path(const std::string& name) const { return (staging_ / name).string(); }
  void write(const std::string& name, const std::string& content) const {
    write_text_file(path(name), content);
  }
  void commit() {
    std::error_code ec;
    fs::rename(staging_, target_, ec);
    if (ec) throw IoError("cannot move results into " + target_ + ": " + ec.message());
    committed_ = true;
  }

 private:
  std::string target_;
  fs::path staging_;
  bool committed_ = false;
};

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::optional<double> gamma;
  double tolerance = 1e-6;
};

void add_common(CLI::App* sub, Common& c, bool config, bool gamma, bool tolerance) {
  if (config) sub->add_option("--config", c.config, "JSON configuration file");
  sub->add_option("--out", c.out, "Output directory (must not exist)")->required();
  sub->add_option("--seed", c.seed, "Random seed (overrides the config)");
  if (gamma) sub->add_option("--gamma", c.gamma, "Weight constant (default: calibrated)");
  if (tolerance) sub->add_option("--tolerance", c.tolerance, "Relative margin tolerance");
}

SimConfig load_config(const Common& c) {
  if (c.config.empty()) throw ConfigError("--config is required");
  SimConfig cfg = parse_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

std::vector<double> snapshot_energies(const Trajectory& traj) {
  std::vector<double> e;
  for (const auto& s : traj.snapshots) e.push_back(s.energy);
  return e;
}

// ---- subcommands ----

int cmd_run(const Common& c, std::ostream& out) {
  const SimConfig cfg = load_config(c);
  OutputDir dir(c.out, "run", c.config, cfg.seed);
  dir.write("config.json", config_to_json(cfg) + "\n");
  try {
    const Trajectory traj = run(cfg);
    write_trajectory(traj, dir.path("trajectory.bin"));
    dir.write("energy.csv", energy_csv(traj));
    const Snapshot& last = traj.snapshots.back();
    write_checkpoint(dir.path("final.chk"),
                     SolverState{last.t, last.u, last.sigma, cfg.step_count()}, cfg);
    json summary = {
        {"t_final", last.t},
        {"steps", cfg.step_count()},
        {"snapshots", traj.snapshots.size()},
        {"energy_initial", traj.energy.front().energy},
        {"energy_final", traj.energy.back().energy},
        {"max_divergence_drift", traj.max_divergence_drift},
    };
    dir.write("summary.json", summary.dump(2) + "\n");
    dir.commit();
    out << "run: " << cfg.step_count() << " steps, E(0)=" << format_double(traj.energy.front().energy)
        << " E(T)=" << format_double(traj.energy.back().energy) << "\n";
    return kExitPass;
  } catch (const IntegrationBlowup& e) {
    write_checkpoint(dir.path("last_good.chk"), e.last_good(), cfg);
    json info = {{"error", e.what()}, {"time", e.time()},
                 {"mode", std::vector<int>(e.mode().begin(), e.mode().end())}};
    dir.write("blowup.json", info.dump(2) + "\n");
    dir.commit();
    throw;
  }
}

struct CheckOptions {
  std::string mode = "zero-test";
  std::string test_pair;
  std::string trajectory;
  int degree = 10;
  int ref_factor = 8;
  int calibration_samples = 200;
};

int cmd_check(const Common& c, const CheckOptions& o, std::ostream& out) {
  if (o.mode != "zero-test" && o.mode != "self-test" && o.mode != "test-pair") {
    throw ConfigError("--mode must be zero-test, self-test or test-pair");
  }
  if (o.mode == "test-pair" && o.test_pair.empty()) {
    throw ConfigError("--mode test-pair needs --test-pair FILE");
  }
  std::optional<Trajectory> loaded;
  SimConfig cfg;
  if (!o.trajectory.empty()) {
    if (o.mode == "self-test") throw ConfigError("self-test runs its own simulations; drop --trajectory");
    loaded = read_trajectory(o.trajectory);
    cfg = loaded->config;
  } else {
    cfg = load_config(c);
  }
  OutputDir dir(c.out, "check", c.config.empty() ? o.trajectory : c.config, cfg.seed);
  const double gamma =
      c.gamma ? *c.gamma : calibrate_gamma(cfg.grid(), o.calibration_samples, cfg.seed).gamma;
  if (!(gamma > 0.0)) throw ConfigError("--gamma must be positive");
  const PhysicalParams params = cfg.params();

  DissipativeReport report;
  std::vector<double> energy;
  if (o.mode == "self-test") {
    CoincidenceOptions co;
    co.ref_factor = o.ref_factor;
    co.degree = o.degree;
    co.gamma = gamma;
    co.tolerance = c.tolerance;
    report = coincidence_check(cfg, co).report;
  } else {
    const Trajectory traj = loaded ? *loaded : run(cfg);
    energy = snapshot_energies(traj);
    const TestPair pair =
        o.mode == "zero-test" ? TestPair::zero(cfg.grid()) : read_test_pair(o.test_pair);
    MarginOptions mo;
    mo.tolerance = c.tolerance;
    report = inequality_margin(traj, pair, params, gamma, default_mode(params), mo);
  }
  dir.write("report.csv", report_csv(report, energy));
  dir.write("report.json", report_json(report));
  dir.commit();
  out << "check " << o.mode << ": min_margin=" << format_double(report.min_margin)
      << " scale=" << format_double(report.scale) << " gamma=" << format_double(gamma) << " -> "
      << (report.pass ? "no violation found" : "VIOLATION") << "\n";
  return report.pass ? kExitPass : kExitCheckFailed;
}

struct IdentityOptions {
  int dim = 2;
  int n = 64;
  double alpha = 1.0;
  int samples = 100;
};

int cmd_identities(const Common& c, const IdentityOptions& o, std::ostream& out) {
  const std::uint64_t seed = c.seed.value_or(0);
  OutputDir dir(c.out, "identities", c.config, seed);
  const IdentityResult r = identity_suite(o.dim, o.n, o.alpha, o.samples, seed);
  json doc = {{"samples", r.samples},       {"trilinear", r.trilinear},
              {"transport", r.transport},   {"commutator", r.commutator},
              {"tolerance", r.tolerance},   {"pass", r.pass}};
  dir.write("identities.json", doc.dump(2) + "\n");
  dir.commit();
  out << "identities: trilinear=" << format_double(r.trilinear)
      << " transport=" << format_double(r.transport)
      << " commutator=" << format_double(r.commutator) << " -> " << (r.pass ? "pass" : "FAIL")
      << "\n";
  return r.pass ? kExitPass : kExitCheckFailed;
}

int cmd_gronwall(const Common& c, std::ostream& out) {
  const std::uint64_t seed = c.seed.value_or(0);
  OutputDir dir(c.out, "gronwall-selftest", c.config, seed);
  const auto cases = gronwall_selftest(seed);
  json arr = json::array();
  bool pass = true;
  for (const auto& k : cases) {
    arr.push_back({{"case", k.name}, {"error", k.error}, {"tolerance", k.tolerance},
                   {"pass", k.pass}});
    pass = pass && k.pass;
    out << "gronwall " << k.name << ": error=" << format_double(k.error) << " -> "
        << (k.pass ? "pass" : "FAIL") << "\n";
  }
  dir.write("gronwall.json", json({{"cases", arr}, {"pass", pass}}).dump(2) + "\n");
  dir.commit();
  return pass ? kExitPass : kExitCheckFailed;
}

struct CalibrateOptions {
  int dim = 2;
  int n = 64;
  int samples = 200;
  double safety = 2.0;
};

int cmd_calibrate(const Common& c, const CalibrateOptions& o, std::ostream& out) {
  int dim = o.dim;
  int n = o.n;
  std::uint64_t seed = c.seed.value_or(0);
  if (!c.config.empty()) {
    const SimConfig cfg = load_config(c);
    dim = cfg.dim;
    n = cfg.n;
    seed = cfg.seed;
  }
  OutputDir dir(c.out, "calibrate-gamma", c.config, seed);
  const GammaCalibration g = calibrate_gamma(Grid(dim, n), o.samples, seed, o.safety);
  json doc = {{"gamma", g.gamma}, {"c_product_l2", g.c_product_l2},
              {"c_product_h1", g.c_product_h1}, {"safety", g.safety},
              {"samples", o.samples}, {"seed", seed}};
  dir.write("gamma.json", doc.dump(2) + "\n");
  dir.commit();
  out << "gamma=" << format_double(g.gamma) << "\n";
  return kExitPass;
}

int cmd_sweep(const Common& c, const std::vector<double>& alphas, std::ostream& out) {
  const SimConfig cfg = load_config(c);
  OutputDir dir(c.out, "sweep-alpha", c.config, cfg.seed);
  const auto entries = alpha_sweep(cfg, alphas, c.workers);
  dir.write("sweep.json", sweep_json(entries));
  dir.write("sweep.csv", sweep_csv(entries));
  dir.commit();
  bool all_completed = true;
  bool all_bounded = true;
  for (const auto& e : entries) {
    out << "alpha=" << format_double(e.alpha);
    if (e.completed) {
      out << " E0=" << format_double(e.e0) << " supE=" << format_double(e.sup_energy)
          << (e.bound_ok ? " bounded" : " EXCEEDS E0") << "\n";
    } else {
      out << " failed: " << e.error << "\n";
    }
    all_completed = all_completed && e.completed;
    all_bounded = all_bounded && e.bound_ok;
  }
  if (!all_completed) return kExitBlowup;
  return all_bounded ? kExitPass : kExitCheckFailed;
}

struct OdeOptions {
  std::string which = "linear";
  double dt = 1e-3;
  int curves = 50;
};

int cmd_ode(const Common& c, const OdeOptions& o, std::ostream& out) {
  const std::uint64_t seed = c.seed.value_or(0);
  OutputDir dir(c.out, "ode-demo", c.config, seed);
  const OdeDemoResult r = ode_demo(o.which, o.dt, o.curves, seed);
  json doc = {{"case", r.name}, {"apriori_holds", r.apriori_holds}, {"pass", r.pass}};
  if (o.which == "sgn") {
    doc["epsilons"] = r.epsilons;
    doc["sup_errors"] = r.sup_errors;
    doc["allowances"] = r.allowances;
  } else {
    doc["min_margin"] = r.min_margin;
    doc["curves"] = o.curves;
  }
  dir.write("ode.json", doc.dump(2) + "\n");
  dir.write("ode.csv", ode_csv(r.path, r.apriori));
  dir.commit();
  out << "ode-demo " << r.name << ": " << (r.pass ? "pass" : "FAIL") << "\n";
  return r.pass ? kExitPass : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maxwell-alpha / Euler-alpha solver and dissipative-solution checks", "malpha"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  Common common;
  CheckOptions check;
  IdentityOptions ident;
  CalibrateOptions calib;
  OdeOptions ode_opts;
  std::string alphas_text = "1,0.5,0.25,0.1";

  auto* run_cmd = app.add_subcommand("run", "Integrate a configuration and save the trajectory");
  add_common(run_cmd, common, true, false, false);

  auto* check_cmd = app.add_subcommand("check", "Evaluate the dissipative inequality");
  add_common(check_cmd, common, true, true, true);
  check_cmd->add_option("--mode", check.mode, "zero-test | self-test | test-pair");
  check_cmd->add_option("--test-pair", check.test_pair, "Test pair JSON file");
  check_cmd->add_option("--trajectory", check.trajectory, "Check a saved trajectory instead of running");
  check_cmd->add_option("--degree", check.degree, "Polynomial degree of the self-test pair");
  check_cmd->add_option("--ref-factor", check.ref_factor, "dt refinement of the self-test reference");

  auto* ident_cmd = app.add_subcommand("identities", "Vanishing-identity suite on random fields");
  add_common(ident_cmd, common, false, false, false);
  ident_cmd->add_option("--dim", ident.dim);
  ident_cmd->add_option("--n", ident.n);
  ident_cmd->add_option("--alpha", ident.alpha);
  ident_cmd->add_option("--samples", ident.samples);

  auto* gron_cmd = app.add_subcommand("gronwall-selftest", "Gronwall bound against reference solutions");
  add_common(gron_cmd, common, false, false, false);

  auto* cal_cmd = app.add_subcommand("calibrate-gamma", "Sample the product constants behind gamma");
  add_common(cal_cmd, common, true, false, false);
  cal_cmd->add_option("--dim", calib.dim);
  cal_cmd->add_option("--n", calib.n);
  cal_cmd->add_option("--samples", calib.samples);
  cal_cmd->add_option("--safety", calib.safety);

  auto* sweep_cmd = app.add_subcommand("sweep-alpha", "Energy bounds over a decreasing list of alpha");
  add_common(sweep_cmd, common, true, false, false);
  sweep_cmd->add_option("--alphas", alphas_text, "Comma-separated, decreasing");
  sweep_cmd->add_option("--workers", common.workers, "Concurrent simulations");

  auto* ode_cmd = app.add_subcommand("ode-demo", "Abstract ODE demonstrations");
  add_common(ode_cmd, common, false, false, false);
  ode_cmd->add_option("--case", ode_opts.which, "linear | rotation | sgn | affine");
  ode_cmd->add_option("--dt", ode_opts.dt);
  ode_cmd->add_option("--curves", ode_opts.curves);

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();  // program name
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(common, out);
    if (check_cmd->parsed()) return cmd_check(common, check, out);
    if (ident_cmd->parsed()) return cmd_identities(common, ident, out);
    if (gron_cmd->parsed()) return cmd_gronwall(common, out);
    if (cal_cmd->parsed()) return cmd_calibrate(common, calib, out);
    if (sweep_cmd->parsed()) {
      std::vector<double> alphas;
      std::stringstream ss(alphas_text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          alphas.push_back(std::stod(item));
        } catch (const std::exception&) {
          throw ConfigError("--alphas: cannot parse \"" + item + "\"");
        }
      }
      return cmd_sweep(common, alphas, out);
    }
    if (ode_cmd->parsed()) return cmd_ode(common, ode_opts, out);
  } catch (const NumericalBlowup& e) {
    err << "error: numerical blowup: " << e.what() << "\n";
    return kExitBlowup;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractViolation& e) {
    err << "error: contract violation: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace malpha::app
