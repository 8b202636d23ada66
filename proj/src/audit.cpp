#include "acqf/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "acqf/parallel.hpp"
#include "acqf/rng.hpp"

namespace acqf {

const char* to_string(Verdict v) noexcept {
  return v == Verdict::Violation ? "Violation" : "Consistent";
}

namespace {

double g_term(double observed, double expected) {
  if (observed == 0.0) return 0.0;
  if (expected == 0.0) return std::numeric_limits<double>::infinity();
  return observed * std::log(observed / expected);
}

}  // namespace

AuditReport audit_log(std::span<const DecisionEvent> events, const AuditOptions& options) {
  if (events.empty()) throw EmptyLog("audit_log: no events");

  std::map<Channel, ChannelStats> groups;
  for (const auto& ev : events) {
    Channel key = ev.channel;
    if (options.pool_systems) key.system_id = 0;
    auto [it, inserted] = groups.try_emplace(key);
    auto& s = it->second;
    if (inserted) {
      s.channel = key;
      s.born_p_plus = ev.born_p_plus;
    } else if (std::abs(s.born_p_plus - ev.born_p_plus) > 1e-9) {
      throw InconsistentChannel("channel (" + std::to_string(key.system_id) + ", " +
                                key.ready_label + ", " + key.observable_label +
                                ") has differing Born probabilities");
    }
    (ev.outcome == Outcome::Plus ? s.n_plus : s.n_minus) += 1;
  }

  AuditReport report;
  report.alpha = options.alpha;
  report.pool_systems = options.pool_systems;
  report.per_channel.reserve(groups.size());
  double min_p = 1.0;
  for (auto& [key, s] : groups) {
    const std::size_t n = s.n_plus + s.n_minus;
    s.p_value = binomial_p_value(s.n_plus, n, s.born_p_plus);
    min_p = std::min(min_p, s.p_value);
    const double nd = static_cast<double>(n);
    report.g_statistic += 2.0 * (g_term(static_cast<double>(s.n_plus), nd * s.born_p_plus) +
                                 g_term(static_cast<double>(s.n_minus), nd * (1.0 - s.born_p_plus)));
    report.per_channel.push_back(s);
  }

  const auto p_values = channel_p_values(report);
  const auto fisher = fisher_combine(p_values);
  report.fisher_statistic = fisher.statistic;
  report.fisher_p = fisher.combined_p;
  report.bonferroni_p = std::min(1.0, static_cast<double>(p_values.size()) * min_p);
  report.verdict = std::min(report.fisher_p, report.bonferroni_p) < options.alpha
                       ? Verdict::Violation
                       : Verdict::Consistent;
  return report;
}

std::vector<double> channel_p_values(const AuditReport& report) {
  std::vector<double> out;
  out.reserve(report.per_channel.size());
  for (const auto& s : report.per_channel) out.push_back(s.p_value);
  return out;
}

void PowerGrid::validate() const {
  if (n_systems.empty() || beta.empty() || trials.empty()) {
    throw std::invalid_argument("power grid: every axis needs at least one value");
  }
  for (auto n : n_systems) {
    if (n < 1) throw std::invalid_argument("power grid: n_systems must be at least 1");
  }
  for (auto b : beta) {
    if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("power grid: beta must lie in [0, 1]");
  }
  for (auto t : trials) {
    if (t < 1) throw std::invalid_argument("power grid: trials must be at least 1");
  }
}

std::vector<PowerRow> power_curve(const PowerGrid& grid, const PowerSettings& settings) {
  grid.validate();
  if (settings.replicates < 1) throw std::invalid_argument("power_curve: replicates must be >= 1");

  struct Cell {
    std::size_t n_systems;
    double beta;
    std::size_t trials;
  };
  std::vector<Cell> cells;
  for (auto n : grid.n_systems)
    for (auto b : grid.beta)
      for (auto t : grid.trials) cells.push_back({n, b, t});

  const std::size_t reps = settings.replicates;
  std::vector<unsigned char> violated(cells.size() * reps, 0);
  parallel_for(violated.size(), settings.workers, [&](std::size_t job) {
    const std::size_t c = job / reps, r = job % reps;
    PoolConfig pool = settings.pool;
    pool.n_systems = cells[c].n_systems;
    AgentPolicy policy = settings.policy;
    policy.bias_beta = cells[c].beta;
    Rng rng(derive_seed(settings.seed, c, r));
    const auto events = simulate_decisions(pool, policy, settings.intent, cells[c].trials, rng);
    violated[job] = audit_log(events, settings.audit).verdict == Verdict::Violation;
  });

  std::vector<PowerRow> rows;
  rows.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::size_t hits = 0;
    for (std::size_t r = 0; r < reps; ++r) hits += violated[c * reps + r];
    const double power = static_cast<double>(hits) / static_cast<double>(reps);
    rows.push_back({cells[c].n_systems, cells[c].beta, cells[c].trials, power,
                    std::sqrt(power * (1.0 - power) / static_cast<double>(reps))});
  }
  return rows;
}

}  // namespace acqf
