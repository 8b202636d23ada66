#include "acqf/flux_pool.hpp"

#include <algorithm>
#include <set>

namespace acqf {

namespace {

std::size_t frame_index(const Frame& frame, const std::string& label) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (frame.label(i) == label) return i;
  }
  return 3;
}

void require_unique(const std::vector<std::string>& labels, const char* field) {
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) {
    throw std::invalid_argument(std::string(field) + ": duplicate label");
  }
}

}  // namespace

void PoolConfig::validate() const {
  if (n_systems < 1) throw std::invalid_argument("n_systems: must be at least 1");
  if (!(churn_rate >= 0.0 && churn_rate <= 1.0)) {
    throw std::invalid_argument("churn_rate: must lie in [0, 1]");
  }
  if (ready_labels.empty()) throw std::invalid_argument("ready_states: at least one required");
  if (observable_labels.empty()) throw std::invalid_argument("observables: at least one required");
  require_unique(ready_labels, "ready_states");
  require_unique(observable_labels, "observables");
  for (const auto& l : ready_labels) {
    if (frame_index(ready_frame, l) == 3) {
      throw std::invalid_argument("ready_states: unknown ready-frame label '" + l + "'");
    }
  }
  for (const auto& l : observable_labels) {
    if (l.size() < 2 || l[0] != 'S' || frame_index(measurement_frame, l.substr(1)) == 3) {
      throw std::invalid_argument("observables: unknown observable '" + l + "'");
    }
  }
}

std::vector<ReadyState> PoolConfig::ready_set() const {
  std::vector<ReadyState> out;
  for (const auto& l : ready_labels) {
    out.push_back({l, ready_frame.axis(frame_index(ready_frame, l))});
  }
  if (symmetrize) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back({"-" + out[i].label, -out[i].direction});
  }
  return out;
}

std::vector<Observable> PoolConfig::observables() const {
  std::vector<Observable> out;
  for (const auto& l : observable_labels) {
    out.push_back({measurement_frame.axis(frame_index(measurement_frame, l.substr(1))), l});
  }
  return out;
}

Pool::Pool(std::vector<QuantumSystem> systems, std::vector<ReadyState> ready_set,
           std::vector<Observable> observables)
    : systems_(std::move(systems)),
      ready_set_(std::move(ready_set)),
      observables_(std::move(observables)) {
  if (systems_.empty()) throw std::invalid_argument("pool must hold at least one system");
  for (std::size_t i = 0; i < systems_.size(); ++i) {
    if (systems_[i].id != i) throw std::invalid_argument("system ids must be 0..N-1 in order");
  }
}

const QuantumSystem& Pool::system(std::size_t id) const {
  if (id >= systems_.size()) throw UnknownSystem("no system with id " + std::to_string(id));
  return systems_[id];
}

const Observable& Pool::observable(const std::string& label) const {
  auto it = std::find_if(observables_.begin(), observables_.end(),
                         [&](const Observable& o) { return o.label == label; });
  if (it == observables_.end()) throw UnknownObservable("no observable labelled " + label);
  return *it;
}

Pool init_pool(const PoolConfig& config, Rng& rng) {
  config.validate();
  auto ready = config.ready_set();
  std::vector<QuantumSystem> systems;
  systems.reserve(config.n_systems);
  for (std::size_t i = 0; i < config.n_systems; ++i) {
    const auto& r = ready[rng.index(ready.size())];
    systems.push_back({i, r.direction, r.label});
  }
  return Pool(std::move(systems), std::move(ready), config.observables());
}

void step_flux(Pool& pool, const PoolConfig& config, Rng& rng) {
  if (config.churn_rate <= 0.0) return;
  const auto& ready = pool.ready_set_;
  for (auto& s : pool.systems_) {
    if (rng.uniform() < config.churn_rate) {
      const auto& r = ready[rng.index(ready.size())];
      s.state = r.direction;
      s.label = r.label;
    }
  }
}

Channel select_channel(Pool& pool, const PoolConfig& config, Rng& rng) {
  const std::size_t n_obs = pool.observables_.size();
  std::size_t sys = 0, obs = 0;
  if (config.scheduler == Scheduler::RoundRobin) {
    const std::size_t pair = pool.cursor_ % (pool.systems_.size() * n_obs);
    sys = pair / n_obs;
    obs = pair % n_obs;
  } else {
    sys = rng.index(pool.systems_.size());
    obs = rng.index(n_obs);
  }
  ++pool.cursor_;
  return {sys, pool.systems_[sys].label, pool.observables_[obs].label};
}

double channel_p_plus(const Pool& pool, const Channel& channel) {
  return born_probability(pool.system(channel.system_id).state,
                          pool.observable(channel.observable_label).axis)
      .p_plus;
}

void apply_measurement(Pool& pool, const Channel& channel, Outcome outcome) {
  if (channel.system_id >= pool.systems_.size()) {
    throw UnknownSystem("no system with id " + std::to_string(channel.system_id));
  }
  const Observable& obs = pool.observable(channel.observable_label);
  auto& s = pool.systems_[channel.system_id];
  s.state = collapse(obs.axis, outcome);
  s.label = (outcome == Outcome::Plus ? "+" : "-") + obs.label;
}

}  // namespace acqf
