#pragma once

// A bacterium on a 1-D lattice with a linear nutrient gradient. The gradient
// primes the intent; the flux pool and the agent policy realize each move.

#include <cstdint>
#include <vector>

#include "acqf/agents.hpp"
#include "acqf/flux_pool.hpp"
#include "acqf/rng.hpp"

namespace acqf {

/// c(x) = max(0, c0 + slope * x).
struct World {
  double c0 = 1.0;
  double slope = 0.1;

  double concentration(std::int64_t site) const noexcept;
  void validate() const;
};

struct Bacterium {
  std::int64_t position = 0;
  Pool pool;
  AgentPolicy policy;
  ChannelHistory history;
};

struct Trajectory {
  std::vector<std::int64_t> positions;  // start position, then one entry per move
  std::vector<DecisionEvent> events;    // one per move
};

/// R when the right neighbour is richer, L when poorer; an exact tie is broken
/// by a fair coin from `rng` (Plus side: draw < 0.5 gives R).
MacroChoice prime(const World& world, std::int64_t position, Rng& rng);

/// Per step: step_flux, prime, select_channel, Born probability, decide,
/// apply_measurement, then move +1 for R or -1 for L.
Trajectory run_scenario(const World& world, Bacterium& bacterium, std::size_t steps,
                        const PoolConfig& config, Rng& rng);

/// Convenience: builds a bacterium at `start` with a fresh pool and runs it.
Trajectory run_scenario(const World& world, std::int64_t start, const AgentPolicy& policy,
                        std::size_t steps, const PoolConfig& config, Rng& rng);

struct DriftStatistic {
  double mean_step;
  double standard_error;  // sample sd / sqrt(n); 0 for a single step
};

/// Mean per-step displacement and its standard error. Throws
/// std::invalid_argument for a trajectory without moves.
DriftStatistic drift_statistic(const Trajectory& trajectory);

}  // namespace acqf
