#pragma once

// Choice policies: how an agent turns a macro intent and a selected channel
// into a realized measurement outcome.

#include <cstddef>
#include <map>
#include <vector>

#include "acqf/bloch.hpp"
#include "acqf/flux_pool.hpp"
#include "acqf/rng.hpp"

namespace acqf {

enum class MacroChoice { R, L };

const char* to_string(MacroChoice m) noexcept;

/// Plus -> R, Minus -> L.
MacroChoice macro_from_outcome(Outcome outcome) noexcept;
/// Inverse of macro_from_outcome.
Outcome outcome_for(MacroChoice intent) noexcept;

enum class PolicyKind { Born, Volitional, BudgetedVolitional };

const char* to_string(PolicyKind k) noexcept;

struct AgentPolicy {
  PolicyKind kind = PolicyKind::Born;
  double bias_beta = 0.0;         // override probability, Volitional only
  double tolerance_delta = 0.05;  // Wilson band miscoverage, BudgetedVolitional only

  static AgentPolicy born() { return {}; }
  static AgentPolicy volitional(double beta) { return {PolicyKind::Volitional, beta, 0.05}; }
  static AgentPolicy budgeted(double delta = 0.05) {
    return {PolicyKind::BudgetedVolitional, 1.0, delta};
  }

  void validate() const;
};

struct ChannelCounts {
  std::size_t n_plus = 0;
  std::size_t n_total = 0;
};

/// Per-channel outcome tallies for one run.
class ChannelHistory {
 public:
  ChannelCounts counts(const Channel& channel) const;
  void record(const Channel& channel, Outcome outcome);
  const std::map<Channel, ChannelCounts>& all() const noexcept { return counts_; }

 private:
  std::map<Channel, ChannelCounts> counts_;
};

struct DecisionEvent {
  std::size_t step = 0;
  Channel channel;
  double born_p_plus = 0.5;
  MacroChoice intent = MacroChoice::R;
  Outcome outcome = Outcome::Plus;
  bool overridden = false;

  friend bool operator==(const DecisionEvent&, const DecisionEvent&) = default;
};

/// Half-width of the Wilson score interval for n trials at proportion p with
/// normal quantile z.
double wilson_half_width(std::size_t n, double p, double z) noexcept;

/// Two-sided normal quantile z = Phi^-1(1 - delta / 2).
double band_quantile(double delta);

/// True when n_plus / n lies within [p - w, p + w], w = wilson_half_width(n, p, z).
bool within_band(std::size_t n_plus, std::size_t n, double p, double z) noexcept;

/// Realizes one decision.
///
/// Born samples Plus iff a uniform draw falls below born_p_plus. Volitional
/// first draws u and forces the intended outcome when u < bias_beta, else
/// samples per Born. BudgetedVolitional forces the intended outcome whenever
/// the channel's Plus-frequency after the trial stays inside its Wilson band
/// around born_p_plus (the channel's first trial is always free). Otherwise it
/// samples per Born; should the sampled outcome leave the band while the other
/// outcome keeps it inside, the other outcome is taken instead (overridden).
/// When neither outcome fits, the Born sample stands.
DecisionEvent decide(const AgentPolicy& policy, MacroChoice intent, const Channel& channel,
                     double born_p_plus, const ChannelCounts& history, std::size_t step,
                     Rng& rng);

/// Exact P(macro R) per decision for the Born policy with uniform scheduling
/// over a fully churned pool: mean of (1 + u.v)/2 over ready states u and
/// observable axes v.
double baseline_macro_drift(const PoolConfig& config);

/// One replicate of `trials` decisions with a fixed intent. Each decision runs
/// step_flux, select_channel, decide, apply_measurement.
std::vector<DecisionEvent> simulate_decisions(const PoolConfig& config, const AgentPolicy& policy,
                                              MacroChoice intent, std::size_t trials, Rng& rng);

}  // namespace acqf
