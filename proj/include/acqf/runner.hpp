#pragma once

#include <cstdint>
#include <vector>

#include "acqf/agents.hpp"
#include "acqf/chemotaxis.hpp"
#include "acqf/config.hpp"

namespace acqf {

/// `replicates` independent runs of config.scenario.steps decisions with a
/// fixed intent. Replicate r uses Rng(derive_seed(seed, 0, r)); the result is
/// indexed by replicate and independent of `workers`.
std::vector<std::vector<DecisionEvent>> simulate_replicates(const RunConfig& config,
                                                            std::uint64_t seed,
                                                            std::size_t workers);

/// One chemotaxis run (replicate 0) from config.scenario.start.
Trajectory run_configured_scenario(const RunConfig& config, std::uint64_t seed);

}  // namespace acqf
