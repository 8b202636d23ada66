#pragma once

// Born-rule audit of decision logs and Monte Carlo detection power.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "acqf/agents.hpp"
#include "acqf/flux_pool.hpp"
#include "acqf/stats.hpp"

namespace acqf {

struct EmptyLog : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A channel's records disagree about its Born probability.
struct InconsistentChannel : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Verdict { Consistent, Violation };

const char* to_string(Verdict v) noexcept;

struct ChannelStats {
  Channel channel;
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
  double born_p_plus = 0.5;
  double p_value = 1.0;

  friend bool operator==(const ChannelStats&, const ChannelStats&) = default;
};

struct AuditOptions {
  double alpha = 0.05;
  // Merge statistics across systems: channels keyed by (ready, observable) only.
  // Merged channels report system_id 0.
  bool pool_systems = false;
};

struct AuditReport {
  double alpha = 0.05;
  bool pool_systems = false;
  std::vector<ChannelStats> per_channel;  // sorted by (system_id, ready, observable)
  double fisher_statistic = 0.0;
  double fisher_p = 1.0;
  double bonferroni_p = 1.0;
  double g_statistic = 0.0;  // +inf when an impossible outcome was observed
  Verdict verdict = Verdict::Consistent;

  friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

/// Groups events by channel, runs the exact binomial test per channel and
/// combines them with Fisher's method and a Bonferroni bound over all channels
/// that saw at least one trial. Verdict is Violation iff
/// min(fisher_p, bonferroni_p) < alpha. P-values carry no continuity correction.
///
/// Throws EmptyLog when there are no events and InconsistentChannel when one
/// channel's events carry different Born probabilities (beyond 1e-9).
AuditReport audit_log(std::span<const DecisionEvent> events, const AuditOptions& options = {});

/// Per-channel p-values of a report, in channel order.
std::vector<double> channel_p_values(const AuditReport& report);

struct PowerGrid {
  std::vector<std::size_t> n_systems;
  std::vector<double> beta;
  std::vector<std::size_t> trials;

  void validate() const;
};

struct PowerSettings {
  PoolConfig pool;            // n_systems is overridden per cell
  AgentPolicy policy;         // bias_beta is overridden per cell
  MacroChoice intent = MacroChoice::R;
  AuditOptions audit;
  std::size_t replicates = 100;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

struct PowerRow {
  std::size_t n_systems;
  double beta;
  std::size_t trials;
  double power;   // fraction of replicates with verdict Violation
  double stderr_; // binomial standard error sqrt(power (1 - power) / replicates)

  friend bool operator==(const PowerRow&, const PowerRow&) = default;
};

/// Cells are enumerated n_systems-major, then beta, then trials; cell c,
/// replicate r uses Rng(derive_seed(seed, c, r)), so the table is identical
/// for any worker count.
std::vector<PowerRow> power_curve(const PowerGrid& grid, const PowerSettings& settings);

}  // namespace acqf
