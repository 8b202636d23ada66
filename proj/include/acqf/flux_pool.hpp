#pragma once

// The churning pool of quantum systems that instantiates macro choices.
//
// Each system carries a current state direction and its label. Ready states are
// the ready-frame axes (plus their antipodes when symmetrized); a measured
// system sits in an eigenstate of the measured observable, labelled "+Sx",
// "-Sz" and so on, until churn puts it back into a ready state.

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "acqf/bloch.hpp"
#include "acqf/rng.hpp"

namespace acqf {

struct UnknownSystem : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct UnknownObservable : std::out_of_range {
  using std::out_of_range::out_of_range;
};

enum class Scheduler { UniformRandom, RoundRobin };

struct ReadyState {
  std::string label;
  Direction3 direction;
};

struct PoolConfig {
  std::size_t n_systems = 3;
  Frame ready_frame = default_ready_frame();
  Frame measurement_frame = acqf::measurement_frame();
  // Subsets of the frames in use. Ready labels name ready-frame axes; observable
  // labels are "S" + measurement-frame label.
  std::vector<std::string> ready_labels{"alpha", "beta", "gamma"};
  std::vector<std::string> observable_labels{"Sx", "Sy", "Sz"};
  double churn_rate = 1.0;
  bool symmetrize = false;
  Scheduler scheduler = Scheduler::UniformRandom;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// Preparable ready states, in frame order; antipodes "-alpha" etc. follow
  /// when symmetrized.
  std::vector<ReadyState> ready_set() const;
  std::vector<Observable> observables() const;
};

struct QuantumSystem {
  std::size_t id;
  Direction3 state;
  std::string label;
};

/// One micro-instantiation of a macro choice: system i, its ready state j and
/// the observable k acting on it.
struct Channel {
  std::size_t system_id = 0;
  std::string ready_label;
  std::string observable_label;

  friend auto operator<=>(const Channel&, const Channel&) = default;
  friend bool operator==(const Channel&, const Channel&) = default;
};

class Pool {
 public:
  Pool(std::vector<QuantumSystem> systems, std::vector<ReadyState> ready_set,
       std::vector<Observable> observables);

  std::size_t size() const noexcept { return systems_.size(); }
  const std::vector<QuantumSystem>& systems() const noexcept { return systems_; }
  const QuantumSystem& system(std::size_t id) const;
  const std::vector<ReadyState>& ready_set() const noexcept { return ready_set_; }
  const std::vector<Observable>& observables() const noexcept { return observables_; }
  const Observable& observable(const std::string& label) const;

  /// RoundRobin position: number of selections made so far.
  std::size_t cursor() const noexcept { return cursor_; }

 private:
  friend void step_flux(Pool&, const PoolConfig&, Rng&);
  friend Channel select_channel(Pool&, const PoolConfig&, Rng&);
  friend void apply_measurement(Pool&, const Channel&, Outcome);

  std::vector<QuantumSystem> systems_;
  std::vector<ReadyState> ready_set_;
  std::vector<Observable> observables_;
  std::size_t cursor_ = 0;
};

/// Every system starts in a ready state drawn uniformly from the ready set.
Pool init_pool(const PoolConfig& config, Rng& rng);

/// Each system independently, with probability churn_rate, is resampled
/// uniformly from the ready set. One uniform draw per system decides churn and
/// a second picks the new state.
void step_flux(Pool& pool, const PoolConfig& config, Rng& rng);

/// UniformRandom draws a system then an observable. RoundRobin walks the
/// (system, observable) pairs in lexicographic order and draws nothing.
Channel select_channel(Pool& pool, const PoolConfig& config, Rng& rng);

/// Born P(+) for the channel's system in its current state.
double channel_p_plus(const Pool& pool, const Channel& channel);

/// Collapses the channel's system onto +/- the observable axis.
void apply_measurement(Pool& pool, const Channel& channel, Outcome outcome);

}  // namespace acqf
