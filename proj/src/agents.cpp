#include "acqf/agents.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace acqf {

const char* to_string(MacroChoice m) noexcept { return m == MacroChoice::R ? "R" : "L"; }

MacroChoice macro_from_outcome(Outcome outcome) noexcept {
  return outcome == Outcome::Plus ? MacroChoice::R : MacroChoice::L;
}

Outcome outcome_for(MacroChoice intent) noexcept {
  return intent == MacroChoice::R ? Outcome::Plus : Outcome::Minus;
}

const char* to_string(PolicyKind k) noexcept {
  switch (k) {
    case PolicyKind::Born: return "born";
    case PolicyKind::Volitional: return "volitional";
    case PolicyKind::BudgetedVolitional: return "budgeted";
  }
  return "?";
}

void AgentPolicy::validate() const {
  if (!(bias_beta >= 0.0 && bias_beta <= 1.0)) {
    throw std::invalid_argument("bias_beta: must lie in [0, 1]");
  }
  if (!(tolerance_delta > 0.0 && tolerance_delta < 0.5)) {
    throw std::invalid_argument("tolerance_delta: must lie in (0, 0.5)");
  }
}

ChannelCounts ChannelHistory::counts(const Channel& channel) const {
  auto it = counts_.find(channel);
  return it == counts_.end() ? ChannelCounts{} : it->second;
}

void ChannelHistory::record(const Channel& channel, Outcome outcome) {
  auto& c = counts_[channel];
  ++c.n_total;
  if (outcome == Outcome::Plus) ++c.n_plus;
}

double wilson_half_width(std::size_t n, double p, double z) noexcept {
  const double nn = static_cast<double>(n);
  const double z2 = z * z;
  return z / (1.0 + z2 / nn) * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
}

double band_quantile(double delta) {
  return boost::math::quantile(boost::math::normal(), 1.0 - delta / 2.0);
}

bool within_band(std::size_t n_plus, std::size_t n, double p, double z) noexcept {
  const double freq = static_cast<double>(n_plus) / static_cast<double>(n);
  return std::abs(freq - p) <= wilson_half_width(n, p, z);
}

DecisionEvent decide(const AgentPolicy& policy, MacroChoice intent, const Channel& channel,
                     double born_p_plus, const ChannelCounts& history, std::size_t step,
                     Rng& rng) {
  DecisionEvent ev{step, channel, born_p_plus, intent, Outcome::Plus, false};
  const Outcome wanted = outcome_for(intent);

  switch (policy.kind) {
    case PolicyKind::Born:
      ev.outcome = sample_outcome(born_p_plus, rng.uniform());
      break;

    case PolicyKind::Volitional:
      if (rng.uniform() < policy.bias_beta) {
        ev.outcome = wanted;
        ev.overridden = true;
      } else {
        ev.outcome = sample_outcome(born_p_plus, rng.uniform());
      }
      break;

    case PolicyKind::BudgetedVolitional: {
      const double z = band_quantile(policy.tolerance_delta);
      const std::size_t n_after = history.n_total + 1;
      auto fits = [&](Outcome o) {
        return within_band(history.n_plus + (o == Outcome::Plus ? 1 : 0), n_after, born_p_plus, z);
      };
      if (history.n_total == 0 || fits(wanted)) {
        ev.outcome = wanted;
        ev.overridden = true;
        break;
      }
      ev.outcome = sample_outcome(born_p_plus, rng.uniform());
      const Outcome other = ev.outcome == Outcome::Plus ? Outcome::Minus : Outcome::Plus;
      if (!fits(ev.outcome) && fits(other)) {
        ev.outcome = other;
        ev.overridden = true;
      }
      break;
    }
  }
  return ev;
}

double baseline_macro_drift(const PoolConfig& config) {
  const auto ready = config.ready_set();
  const auto obs = config.observables();
  double sum = 0.0;
  for (const auto& r : ready) {
    for (const auto& o : obs) sum += born_probability(r.direction, o.axis).p_plus;
  }
  return sum / static_cast<double>(ready.size() * obs.size());
}

std::vector<DecisionEvent> simulate_decisions(const PoolConfig& config, const AgentPolicy& policy,
                                              MacroChoice intent, std::size_t trials, Rng& rng) {
  policy.validate();
  Pool pool = init_pool(config, rng);
  ChannelHistory history;
  std::vector<DecisionEvent> events;
  events.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    step_flux(pool, config, rng);
    const Channel ch = select_channel(pool, config, rng);
    const double p = channel_p_plus(pool, ch);
    auto ev = decide(policy, intent, ch, p, history.counts(ch), t, rng);
    history.record(ch, ev.outcome);
    apply_measurement(pool, ch, ev.outcome);
    events.push_back(std::move(ev));
  }
  return events;
}

}  // namespace acqf
