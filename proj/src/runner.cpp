#include "acqf/runner.hpp"

#include "acqf/parallel.hpp"
#include "acqf/rng.hpp"

namespace acqf {

std::vector<std::vector<DecisionEvent>> simulate_replicates(const RunConfig& config,
                                                            std::uint64_t seed,
                                                            std::size_t workers) {
  std::vector<std::vector<DecisionEvent>> out(config.run.replicates);
  parallel_for(out.size(), workers, [&](std::size_t r) {
    Rng rng(derive_seed(seed, 0, r));
    out[r] = simulate_decisions(config.pool, config.policy, config.intent, config.scenario.steps, rng);
  });
  return out;
}

Trajectory run_configured_scenario(const RunConfig& config, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0, 0));
  return run_scenario(config.scenario.world, config.scenario.start, config.policy,
                      config.scenario.steps, config.pool, rng);
}

}  // namespace acqf
