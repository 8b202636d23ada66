// Acceptance run: one PASS/FAIL line per criterion. Criterion k uses master
// seed k. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>
#include <sys/wait.h>
#include <unistd.h>

#include "acqf/audit.hpp"
#include "acqf/bloch.hpp"
#include "acqf/chemotaxis.hpp"
#include "acqf/stats.hpp"
#include "oracles.hpp"

using namespace acqf;
namespace fs = std::filesystem;

namespace {

struct Result {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::array<double, 3> random_direction(std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    std::array<double, 3> v{n(gen), n(gen), n(gen)};
    const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (len > 1e-6) return {v[0] / len, v[1] / len, v[2] / len};
  }
}

Result born_core() {
  const auto start = Clock::now();
  std::mt19937_64 gen(1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto u = random_direction(gen);
    const auto v = random_direction(gen);
    const auto got = born_probability(Direction3(u[0], u[1], u[2]), Direction3(v[0], v[1], v[2]));
    const auto want = oracle::spinor_born(u, v);
    worst = std::max({worst, std::abs(got.p_plus - want[0]), std::abs(got.p_minus - want[1])});
  }
  const double t = seconds_since(start);
  return {worst <= 1e-12 && t < 1.0, fmt("max |diff| = %.3g over 1000 pairs, %.3f s", worst, t)};
}

std::size_t count_violations(const PoolConfig& pool, const AgentPolicy& policy, std::size_t steps,
                             std::size_t replicates, std::uint64_t seed) {
  std::size_t violations = 0;
  for (std::size_t r = 0; r < replicates; ++r) {
    Rng rng(derive_seed(seed, 0, r));
    const auto events = simulate_decisions(pool, policy, MacroChoice::R, steps, rng);
    violations += audit_log(events, {0.05, false}).verdict == Verdict::Violation;
  }
  return violations;
}

Result null_calibration() {
  const auto start = Clock::now();
  const auto v = count_violations(PoolConfig{}, AgentPolicy::born(), 10000, 200, 2);
  const double t = seconds_since(start);
  const double rate = v / 200.0;
  return {rate <= 0.08 && t < 60.0, fmt("Violation in %zu/200 (%.1f%%), %.1f s", v, 100 * rate, t)};
}

Result small_n_detection() {
  const auto start = Clock::now();
  const auto v = count_violations(PoolConfig{}, AgentPolicy::volitional(1.0), 1000, 200, 3);
  const double t = seconds_since(start);
  return {v >= 198 && t < 60.0, fmt("Violation in %zu/200, %.1f s", v, t)};
}

Result large_n_dilution() {
  const auto start = Clock::now();
  PowerSettings s;
  s.policy = AgentPolicy::volitional(0.2);
  s.replicates = 500;
  s.seed = 4;
  s.workers = workers();
  const auto rows = power_curve({{3, 300}, {0.2}, {3000}}, s);
  const double t = seconds_since(start);
  const double combined = std::hypot(rows[0].stderr_, rows[1].stderr_);
  const double gap = rows[0].power - rows[1].power;
  return {gap > 2 * combined && t < 600.0,
          fmt("power N=3 %.3f, N=300 %.3f, gap %.3f vs 2 SE %.3f, %.1f s", rows[0].power, rows[1].power, gap,
              2 * combined, t)};
}

struct EvasionCount {
  std::size_t consistent = 0;
  std::size_t far = 0;
};

EvasionCount evasion_on(const PoolConfig& pool, std::uint64_t seed) {
  EvasionCount c;
  for (std::size_t r = 0; r < 100; ++r) {
    Rng rng(derive_seed(seed, 0, r));
    const auto traj = run_scenario(World{}, 0, AgentPolicy::budgeted(), 10000, pool, rng);
    c.consistent += audit_log(traj.events, {0.05, false}).verdict == Verdict::Consistent;
    c.far += traj.positions.back() - traj.positions.front() > 500;
  }
  return c;
}

Result evasion() {
  const auto start = Clock::now();
  PoolConfig plain;
  plain.n_systems = 300;
  PoolConfig sym = plain;
  sym.symmetrize = true;
  const auto a = evasion_on(plain, 5);
  const auto b = evasion_on(sym, 5);
  const double t = seconds_since(start);
  const bool pass = a.consistent >= 95 && a.far >= 90 && b.consistent >= 95 && b.far >= 90;
  return {pass, fmt("default pool: Consistent %zu/100, displacement>500 %zu/100; symmetrized: %zu/100, %zu/100; "
                    "%.1f s",
                    a.consistent, a.far, b.consistent, b.far, t)};
}

Result statistics_oracles() {
  double worst_binom = 0.0;
  for (double p : {0.1, 0.25, 0.5, 0.853553}) {
    for (std::size_t n = 1; n <= 50; ++n) {
      for (std::size_t k = 0; k <= n; ++k) {
        worst_binom = std::max(worst_binom, std::abs(binomial_p_value(k, n, p) - oracle::binomial_p_enumerated(k, n, p)));
      }
    }
  }
  std::mt19937_64 gen(6);
  std::uniform_int_distribution<int> len(1, 40);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_fisher = 0.0;
  for (int c = 0; c < 100; ++c) {
    std::vector<double> ps(static_cast<std::size_t>(len(gen)));
    // Mix of near-null and strongly small p-values.
    const double scale = c % 3 == 0 ? 1e-3 : 1.0;
    for (auto& p : ps) p = std::max(1e-300, scale * unit(gen));
    double stat = 0.0;
    for (double p : ps) stat -= 2.0 * std::log(p);
    const auto got = fisher_combine(ps);
    const double want = oracle::chi2_survival_quadrature(stat, 2.0 * ps.size());
    worst_fisher = std::max(worst_fisher, std::abs(got.combined_p - want));
  }
  return {worst_binom <= 1e-12 && worst_fisher <= 1e-8,
          fmt("binomial max |diff| = %.3g (1325 cases per p), Fisher max |diff| = %.3g (100 cases)", worst_binom,
              worst_fisher)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ACQF_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Result determinism() {
  const auto dir = fs::temp_directory_path() / ("acqf_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "run.ini") << "[pool]\nchurn_rate = 0.5\n[policy]\nkind = volitional\nbias_beta = 0.3\n"
                                    "[scenario]\nsteps = 5000\n[run]\nseed = 7\nreplicates = 8\n";
  const std::string base = "simulate --config " + (dir / "run.ini").string();
  bool ok = true;
  ok &= run_cli(base + " --out " + (dir / "a").string()) == 0;
  ok &= run_cli(base + " --out " + (dir / "b").string()) == 0;
  ok &= run_cli(base + " --out " + (dir / "c").string() + " --workers 1") == 0;
  ok &= run_cli(base + " --out " + (dir / "d").string() + " --workers 8") == 0;
  if (!ok) return {false, "simulate exited nonzero"};
  const auto a = slurp(dir / "a" / "events.csv");
  std::size_t same = 0;
  for (const char* d : {"b", "c", "d"}) same += slurp(dir / d / "events.csv") == a;
  fs::remove_all(dir);
  return {same == 3 && !a.empty(),
          fmt("%zu/3 reruns byte-identical (repeat, --workers 1, --workers 8), %zu bytes", same, a.size())};
}

struct ReplicateDrift {
  double mean;
  double standard_error;
};

ReplicateDrift mean_drift(const AgentPolicy& policy, std::uint64_t seed) {
  std::vector<double> means;
  for (std::size_t r = 0; r < 100; ++r) {
    Rng rng(derive_seed(seed, 0, r));
    means.push_back(drift_statistic(run_scenario(World{}, 0, policy, 10000, PoolConfig{}, rng)).mean_step);
  }
  double sum = 0.0, sq = 0.0;
  for (double m : means) sum += m;
  const double mean = sum / means.size();
  for (double m : means) sq += (m - mean) * (m - mean);
  return {mean, std::sqrt(sq / (means.size() - 1) / means.size())};
}

Result chemotaxis_analytics() {
  const double expected = 2.0 * baseline_macro_drift(PoolConfig{}) - 1.0;
  const auto born = mean_drift(AgentPolicy::born(), 8);
  const auto full = mean_drift(AgentPolicy::volitional(1.0), 8);
  const bool born_ok = std::abs(born.mean - expected) <= 3 * born.standard_error;
  const bool full_ok = full.mean == 1.0 && full.standard_error == 0.0;
  return {born_ok && full_ok, fmt("Born drift %.5f vs %.5f (SE %.5f); beta=1 drift %.6f per step", born.mean,
                                  expected, born.standard_error, full.mean)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
      {"Born-rule core vs spinor oracle", born_core},
      {"Null calibration", null_calibration},
      {"Small-N detectability", small_n_detection},
      {"Large-N dilution", large_n_dilution},
      {"Budgeted evasion", evasion},
      {"Statistics oracles", statistics_oracles},
      {"CLI determinism", determinism},
      {"Chemotaxis analytics", chemotaxis_analytics},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failures += !r.pass;
    std::printf("[%s] %zu. %s: %s\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
