#include "acqf/chemotaxis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace acqf {

double World::concentration(std::int64_t site) const noexcept {
  return std::max(0.0, c0 + slope * static_cast<double>(site));
}

void World::validate() const {
  if (!(c0 >= 0.0) || !std::isfinite(c0)) throw std::invalid_argument("c0: must be finite and >= 0");
  if (!std::isfinite(slope)) throw std::invalid_argument("slope: must be finite");
}

MacroChoice prime(const World& world, std::int64_t position, Rng& rng) {
  const double right = world.concentration(position + 1);
  const double left = world.concentration(position - 1);
  if (right > left) return MacroChoice::R;
  if (right < left) return MacroChoice::L;
  return rng.uniform() < 0.5 ? MacroChoice::R : MacroChoice::L;
}

Trajectory run_scenario(const World& world, Bacterium& bacterium, std::size_t steps,
                        const PoolConfig& config, Rng& rng) {
  if (steps < 1) throw std::invalid_argument("steps: must be at least 1");
  world.validate();
  bacterium.policy.validate();

  Trajectory traj;
  traj.positions.reserve(steps + 1);
  traj.events.reserve(steps);
  traj.positions.push_back(bacterium.position);
  for (std::size_t t = 0; t < steps; ++t) {
    step_flux(bacterium.pool, config, rng);
    const MacroChoice intent = prime(world, bacterium.position, rng);
    const Channel ch = select_channel(bacterium.pool, config, rng);
    const double p = channel_p_plus(bacterium.pool, ch);
    auto ev = decide(bacterium.policy, intent, ch, p, bacterium.history.counts(ch), t, rng);
    bacterium.history.record(ch, ev.outcome);
    apply_measurement(bacterium.pool, ch, ev.outcome);
    bacterium.position += macro_from_outcome(ev.outcome) == MacroChoice::R ? 1 : -1;
    traj.positions.push_back(bacterium.position);
    traj.events.push_back(std::move(ev));
  }
  return traj;
}

Trajectory run_scenario(const World& world, std::int64_t start, const AgentPolicy& policy,
                        std::size_t steps, const PoolConfig& config, Rng& rng) {
  Bacterium b{start, init_pool(config, rng), policy, {}};
  return run_scenario(world, b, steps, config, rng);
}

DriftStatistic drift_statistic(const Trajectory& trajectory) {
  const auto& pos = trajectory.positions;
  if (pos.size() < 2) throw std::invalid_argument("drift_statistic: trajectory has no moves");
  const std::size_t n = pos.size() - 1;
  double sum = 0.0;
  for (std::size_t t = 0; t < n; ++t) sum += static_cast<double>(pos[t + 1] - pos[t]);
  const double mean = sum / static_cast<double>(n);
  if (n == 1) return {mean, 0.0};
  double ss = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double d = static_cast<double>(pos[t + 1] - pos[t]) - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return {mean, sd / std::sqrt(static_cast<double>(n))};
}

}  // namespace acqf
