#pragma once

// File formats: events.csv, trajectory.csv, audit.csv/json, summary.json,
// power.csv and the power SVG chart.
//
// CSV reals are written with exactly 9 fractional digits ("%.9f"); JSON reals
// use nlohmann's shortest round-trip form. Non-finite JSON reals (only an
// infinite G statistic in practice) are written as null and read back as +inf.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "acqf/agents.hpp"
#include "acqf/audit.hpp"
#include "acqf/chemotaxis.hpp"
#include "acqf/config.hpp"

namespace acqf {

class LogFormatError : public std::runtime_error {
 public:
  LogFormatError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline constexpr const char* kEventsHeader =
    "step,replicate,system_id,ready_label,observable_label,born_p_plus,outcome,macro,overridden";
inline constexpr const char* kPowerHeader = "n_systems,beta,trials,power,stderr";

struct EventLogRow {
  std::size_t replicate = 0;
  DecisionEvent event;

  friend bool operator==(const EventLogRow&, const EventLogRow&) = default;
};

/// Fixed-point with 9 fractional digits.
std::string format_fixed9(double value);

/// Writes the header and one row per event, replicate-major, in the given order.
void write_events_csv(std::ostream& out, const std::vector<std::vector<DecisionEvent>>& replicates);

/// Reads an events.csv. The header must match exactly. The macro column must
/// agree with the outcome; intent is not logged and reads back as R.
std::vector<EventLogRow> read_events_csv(std::istream& in);

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

void write_audit_csv(std::ostream& out, const AuditReport& report);

void to_json(nlohmann::json& j, const ChannelStats& s);
void from_json(const nlohmann::json& j, ChannelStats& s);
void to_json(nlohmann::json& j, const AuditReport& r);
void from_json(const nlohmann::json& j, AuditReport& r);

struct ReplicateSummary {
  std::size_t replicate = 0;
  std::size_t events = 0;
  std::size_t r_count = 0;
  std::size_t overridden = 0;
  double r_fraction = 0.0;

  friend bool operator==(const ReplicateSummary&, const ReplicateSummary&) = default;
};

struct RunSummary {
  std::uint64_t seed = 0;
  std::size_t replicates = 0;
  std::size_t steps = 0;
  std::size_t n_systems = 0;
  std::string policy;
  double bias_beta = 0.0;
  double tolerance_delta = 0.0;
  std::string intent;
  double baseline_macro_drift = 0.0;
  double mean_r_fraction = 0.0;
  std::vector<ReplicateSummary> per_replicate;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

RunSummary summarize(const RunConfig& config, std::uint64_t seed,
                     const std::vector<std::vector<DecisionEvent>>& replicates);

void to_json(nlohmann::json& j, const ReplicateSummary& s);
void from_json(const nlohmann::json& j, ReplicateSummary& s);
void to_json(nlohmann::json& j, const RunSummary& s);
void from_json(const nlohmann::json& j, RunSummary& s);

void write_power_csv(std::ostream& out, const std::vector<PowerRow>& rows);
std::vector<PowerRow> read_power_csv(std::istream& in);

/// Self-contained SVG: power against n_systems (log scale when the range spans
/// more than a factor of ten), one polyline per (beta, trials) pair, with axes
/// and a legend drawn as plain <text> elements.
std::string render_power_svg(const std::vector<PowerRow>& rows);

}  // namespace acqf
