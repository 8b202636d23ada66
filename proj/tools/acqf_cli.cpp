// acqf: simulate, audit and plot agent-choice runs.
//
// Exit codes: 0 success, 1 degenerate frame (frame-check only), 2 usage or
// configuration error, 3 runtime error.

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "acqf/audit.hpp"
#include "acqf/bloch.hpp"
#include "acqf/config.hpp"
#include "acqf/io.hpp"
#include "acqf/runner.hpp"

namespace fs = std::filesystem;
using namespace acqf;

namespace {

constexpr int kExitDegenerate = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct ConfigFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

RunConfig read_run_config(const std::string& path) {
  try {
    return load_config(path);
  } catch (const ParseError& e) {
    throw ConfigFailure(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ConfigFailure(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw ConfigFailure(e.what());
  }
}

// --seed, then ACQF_SEED, then the config file.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t from_config) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ACQF_SEED"); env && *env) {
    char* end = nullptr;
    errno = 0;
    const auto v = std::strtoull(env, &end, 10);
    if (errno != 0 || *end != '\0' || *env == '-') {
      throw ConfigFailure(std::string("ACQF_SEED is not an unsigned 64-bit integer: ") + env);
    }
    return v;
  }
  return from_config;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

int cmd_simulate(const std::string& config_path, const fs::path& out_dir,
                 const std::optional<std::uint64_t>& seed_flag,
                 const std::optional<std::size_t>& workers_flag) {
  const RunConfig cfg = read_run_config(config_path);
  const auto seed = resolve_seed(seed_flag, cfg.run.seed);
  const auto workers = workers_flag.value_or(cfg.run.workers);
  if (workers < 1) throw ConfigFailure("--workers must be at least 1");

  const auto replicates = simulate_replicates(cfg, seed, workers);
  fs::create_directories(out_dir);
  {
    auto out = open_out(out_dir / "events.csv");
    write_events_csv(out, replicates);
  }
  write_text(out_dir / "summary.json", dump_json(summarize(cfg, seed, replicates)));
  std::cout << "wrote " << (out_dir / "events.csv").string() << " ("
            << replicates.size() << " replicates x " << cfg.scenario.steps << " events)\n";
  return 0;
}

int cmd_audit(const std::string& log_path, double alpha, bool pool_systems, const fs::path& out_dir) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigFailure("--alpha must lie in (0, 1)");
  std::ifstream in(log_path, std::ios::binary);
  if (!in) throw ConfigFailure("cannot open " + log_path);
  const auto rows = read_events_csv(in);
  std::vector<DecisionEvent> events;
  events.reserve(rows.size());
  for (const auto& r : rows) events.push_back(r.event);

  const auto report = audit_log(events, {alpha, pool_systems});
  fs::create_directories(out_dir);
  write_text(out_dir / "audit.json", dump_json(report));
  {
    auto out = open_out(out_dir / "audit.csv");
    write_audit_csv(out, report);
  }
  std::cout << "verdict: " << to_string(report.verdict) << " (fisher_p=" << report.fisher_p
            << ", bonferroni_p=" << report.bonferroni_p << ", channels="
            << report.per_channel.size() << ")\n";
  return 0;
}

int cmd_power(const std::string& config_path, const std::string& grid_path, const fs::path& out_dir,
              const std::optional<std::uint64_t>& seed_flag,
              const std::optional<std::size_t>& workers_flag) {
  const RunConfig cfg = read_run_config(config_path);
  PowerGrid grid;
  try {
    grid = load_grid(grid_path);
  } catch (const std::exception& e) {
    throw ConfigFailure(grid_path + ": " + e.what());
  }
  PowerSettings settings;
  settings.pool = cfg.pool;
  settings.policy = cfg.policy;
  settings.intent = cfg.intent;
  settings.audit = cfg.audit;
  settings.replicates = cfg.run.replicates;
  settings.seed = resolve_seed(seed_flag, cfg.run.seed);
  settings.workers = workers_flag.value_or(cfg.run.workers);
  if (settings.workers < 1) throw ConfigFailure("--workers must be at least 1");
  if (settings.replicates < 100) {
    std::cerr << "warning: fewer than 100 replicates per cell\n";
  }

  const auto rows = power_curve(grid, settings);
  fs::create_directories(out_dir);
  auto out = open_out(out_dir / "power.csv");
  write_power_csv(out, rows);
  std::cout << "wrote " << (out_dir / "power.csv").string() << " (" << rows.size() << " cells)\n";
  return 0;
}

int cmd_scenario(const std::string& config_path, const fs::path& out_dir,
                 const std::optional<std::uint64_t>& seed_flag) {
  const RunConfig cfg = read_run_config(config_path);
  const auto seed = resolve_seed(seed_flag, cfg.run.seed);
  const auto traj = run_configured_scenario(cfg, seed);
  fs::create_directories(out_dir);
  {
    auto out = open_out(out_dir / "trajectory.csv");
    write_trajectory_csv(out, traj);
  }
  {
    auto out = open_out(out_dir / "events.csv");
    write_events_csv(out, {traj.events});
  }
  const auto drift = drift_statistic(traj);
  std::cout << "final position " << traj.positions.back() << ", mean step " << drift.mean_step
            << " +/- " << drift.standard_error << "\n";
  return 0;
}

int cmd_frame_check(double yaw, double pitch) {
  const auto lab = measurement_frame();
  const auto axes = ready_axes(yaw, pitch);
  const char* names[3] = {"alpha", "beta", "gamma"};
  std::cout.precision(9);
  std::cout << std::fixed;
  for (int i = 0; i < 3; ++i) {
    std::cout << names[i] << " = (" << axes[i].x() << ", " << axes[i].y() << ", " << axes[i].z()
              << ")  dots x,y,z: " << axes[i].dot(lab.axis(0)) << ", " << axes[i].dot(lab.axis(1))
              << ", " << axes[i].dot(lab.axis(2)) << "\n";
  }
  std::cout << "orthogonality residuals: alpha.beta=" << std::abs(axes[0].dot(axes[1]))
            << " alpha.gamma=" << std::abs(axes[0].dot(axes[2]))
            << " beta.gamma=" << std::abs(axes[1].dot(axes[2])) << "\n";
  try {
    make_ready_frame(yaw, pitch);
  } catch (const DegenerateFrame& e) {
    std::cout << "DegenerateFrame: " << e.what() << "\n";
    return kExitDegenerate;
  }
  std::cout << "frame ok\n";
  return 0;
}

int cmd_plot(const std::string& in_path, const fs::path& out_path) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw ConfigFailure("cannot open " + in_path);
  const auto rows = read_power_csv(in);
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  write_text(out_path, render_power_svg(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agent choice via quantum flux: simulator and Born-rule auditor"};
  app.require_subcommand(1);

  std::string config_path, out_dir, log_path, grid_path, in_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  double alpha = 0.05, yaw = 0.0, pitch = 0.0;
  bool pool_systems = false;

  auto* simulate = app.add_subcommand("simulate", "run replicates, write events.csv and summary.json");
  simulate->add_option("--config", config_path, "run configuration (INI)")->required();
  simulate->add_option("--out", out_dir, "output directory")->required();
  simulate->add_option("--seed", seed, "master seed (falls back to ACQF_SEED, then [run] seed)");
  simulate->add_option("--workers", workers, "worker threads");

  auto* audit = app.add_subcommand("audit", "audit an events.csv against Born predictions");
  audit->add_option("--log", log_path, "events.csv")->required();
  audit->add_option("--alpha", alpha, "significance level")->required();
  audit->add_option("--out", out_dir, "output directory")->required();
  audit->add_flag("--pool-systems", pool_systems, "merge channels across systems");

  auto* power = app.add_subcommand("power", "estimate detection power over a grid");
  power->add_option("--config", config_path, "run configuration (INI)")->required();
  power->add_option("--grid", grid_path, "grid file with a [grid] section")->required();
  power->add_option("--out", out_dir, "output directory")->required();
  power->add_option("--seed", seed, "master seed");
  power->add_option("--workers", workers, "worker threads");

  auto* scenario = app.add_subcommand("scenario", "run the chemotaxis scenario");
  scenario->add_option("--config", config_path, "run configuration (INI)")->required();
  scenario->add_option("--out", out_dir, "output directory")->required();
  scenario->add_option("--seed", seed, "master seed");

  auto* frame = app.add_subcommand("frame-check", "inspect a ready frame");
  frame->add_option("--yaw", yaw, "yaw about z (radians)")->required();
  frame->add_option("--pitch", pitch, "pitch about x (radians)")->required();

  auto* plot = app.add_subcommand("plot", "render power.csv as SVG");
  plot->add_option("--in", in_path, "power.csv")->required();
  plot->add_option("--out", out_dir, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(config_path, out_dir, seed, workers);
    if (*audit) return cmd_audit(log_path, alpha, pool_systems, out_dir);
    if (*power) return cmd_power(config_path, grid_path, out_dir, seed, workers);
    if (*scenario) return cmd_scenario(config_path, out_dir, seed);
    if (*frame) return cmd_frame_check(yaw, pitch);
    if (*plot) return cmd_plot(in_path, out_dir);
  } catch (const ConfigFailure& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const LogFormatError& e) {
    std::cerr << "log error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
