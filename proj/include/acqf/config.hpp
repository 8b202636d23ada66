#pragma once

// INI-style run configuration.
//
//   # comment
//   [pool]      n_systems, yaw, pitch, churn_rate, symmetrize, scheduler,
//               ready_states, observables
//   [policy]    kind, bias_beta, tolerance_delta, intent
//   [scenario]  steps, c0, slope, start
//   [audit]     alpha, pool_systems
//   [run]       seed, replicates, workers
//
// Every section and key is optional; omitted keys keep the defaults below.
// Unknown sections or keys, duplicate keys and malformed lines are ParseErrors;
// out-of-range values are ValidationErrors naming the field.

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include "acqf/agents.hpp"
#include "acqf/audit.hpp"
#include "acqf/chemotaxis.hpp"
#include "acqf/flux_pool.hpp"

namespace acqf {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct ScenarioConfig {
  std::size_t steps = 1000;
  World world{};
  std::int64_t start = 0;
};

struct ExecutionConfig {
  std::uint64_t seed = 0;
  std::size_t replicates = 1;
  std::size_t workers = 1;
};

struct RunConfig {
  double yaw = std::numbers::pi / 4.0;
  double pitch = std::numbers::pi / 4.0;
  PoolConfig pool{};
  AgentPolicy policy{};
  MacroChoice intent = MacroChoice::R;
  ScenarioConfig scenario{};
  AuditOptions audit{};
  ExecutionConfig run{};
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// [grid] section with comma-separated n_systems, beta and trials lists.
PowerGrid parse_grid(std::string_view text);
PowerGrid load_grid(const std::string& path);

}  // namespace acqf
