#include "acqf/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace acqf {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

struct Entry {
  std::string value;
  std::size_t line;
};

// section -> key -> entry
using Ini = std::map<std::string, std::map<std::string, Entry>>;

Ini parse_ini(std::string_view text,
              const std::map<std::string, std::set<std::string>>& schema) {
  Ini ini;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!schema.contains(section)) throw ParseError(line_no, "unknown section [" + section + "]");
      ini[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    if (section.empty()) throw ParseError(line_no, "key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (!schema.at(section).contains(key)) {
      throw ParseError(line_no, "unknown key '" + key + "' in [" + section + "]");
    }
    auto [it, inserted] = ini[section].try_emplace(key, Entry{value, line_no});
    if (!inserted) {
      throw ParseError(line_no, "duplicate key '" + key + "' (first set on line " +
                                    std::to_string(it->second.line) + ")");
    }
  }
  return ini;
}

std::string where(const Entry& e) { return " (line " + std::to_string(e.line) + ")"; }

double to_double(const std::string& field, const Entry& e) {
  double v = 0.0;
  const auto* first = e.value.data();
  const auto* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ValidationError(field, "expected a number, got '" + e.value + "'" + where(e));
  }
  return v;
}

std::uint64_t to_u64(const std::string& field, const Entry& e) {
  std::uint64_t v = 0;
  const auto* first = e.value.data();
  const auto* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ValidationError(field, "expected a non-negative integer, got '" + e.value + "'" + where(e));
  }
  return v;
}

std::int64_t to_i64(const std::string& field, const Entry& e) {
  std::int64_t v = 0;
  const auto* first = e.value.data();
  const auto* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ValidationError(field, "expected an integer, got '" + e.value + "'" + where(e));
  }
  return v;
}

bool to_bool(const std::string& field, const Entry& e) {
  if (e.value == "true" || e.value == "1") return true;
  if (e.value == "false" || e.value == "0") return false;
  throw ValidationError(field, "expected true or false, got '" + e.value + "'" + where(e));
}

std::vector<std::string> to_list(const std::string& field, const Entry& e) {
  std::vector<std::string> out;
  std::string_view rest = e.value;
  while (true) {
    const auto comma = rest.find(',');
    const auto item = trim(rest.substr(0, comma));
    if (item.empty()) throw ValidationError(field, "empty list item" + where(e));
    out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

void check(bool ok, const std::string& field, const std::string& message, const Entry* e) {
  if (!ok) throw ValidationError(field, message + (e ? where(*e) : std::string()));
}

const Entry* find(const Ini& ini, const std::string& section, const std::string& key) {
  auto s = ini.find(section);
  if (s == ini.end()) return nullptr;
  auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

const std::map<std::string, std::set<std::string>> kRunSchema = {
    {"pool",
     {"n_systems", "yaw", "pitch", "churn_rate", "symmetrize", "scheduler", "ready_states",
      "observables"}},
    {"policy", {"kind", "bias_beta", "tolerance_delta", "intent"}},
    {"scenario", {"steps", "c0", "slope", "start"}},
    {"audit", {"alpha", "pool_systems"}},
    {"run", {"seed", "replicates", "workers"}},
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  const Ini ini = parse_ini(text, kRunSchema);
  RunConfig cfg;

  // [pool]
  if (auto e = find(ini, "pool", "n_systems")) {
    cfg.pool.n_systems = to_u64("n_systems", *e);
    check(cfg.pool.n_systems >= 1, "n_systems", "must be at least 1", e);
  }
  const Entry* yaw = find(ini, "pool", "yaw");
  const Entry* pitch = find(ini, "pool", "pitch");
  if (yaw) cfg.yaw = to_double("yaw", *yaw);
  if (pitch) cfg.pitch = to_double("pitch", *pitch);
  try {
    cfg.pool.ready_frame = make_ready_frame(cfg.yaw, cfg.pitch);
  } catch (const DegenerateFrame& ex) {
    throw ValidationError(yaw ? "yaw" : "pitch",
                          std::string(ex.what()) + (yaw ? where(*yaw) : pitch ? where(*pitch) : ""));
  }
  if (auto e = find(ini, "pool", "churn_rate")) {
    cfg.pool.churn_rate = to_double("churn_rate", *e);
    check(cfg.pool.churn_rate >= 0.0 && cfg.pool.churn_rate <= 1.0, "churn_rate",
          "must lie in [0, 1]", e);
  }
  if (auto e = find(ini, "pool", "symmetrize")) cfg.pool.symmetrize = to_bool("symmetrize", *e);
  if (auto e = find(ini, "pool", "scheduler")) {
    if (e->value == "uniform") {
      cfg.pool.scheduler = Scheduler::UniformRandom;
    } else if (e->value == "round_robin") {
      cfg.pool.scheduler = Scheduler::RoundRobin;
    } else {
      check(false, "scheduler", "expected uniform or round_robin, got '" + e->value + "'", e);
    }
  }
  if (auto e = find(ini, "pool", "ready_states")) cfg.pool.ready_labels = to_list("ready_states", *e);
  if (auto e = find(ini, "pool", "observables")) cfg.pool.observable_labels = to_list("observables", *e);
  try {
    cfg.pool.validate();
  } catch (const std::invalid_argument& ex) {
    const std::string msg = ex.what();
    const std::string field = msg.substr(0, msg.find(':'));
    const Entry* e = find(ini, "pool", field);
    throw ValidationError(field, msg.substr(msg.find(':') + 2) + (e ? where(*e) : ""));
  }

  // [policy]
  if (auto e = find(ini, "policy", "kind")) {
    if (e->value == "born") {
      cfg.policy.kind = PolicyKind::Born;
    } else if (e->value == "volitional") {
      cfg.policy.kind = PolicyKind::Volitional;
    } else if (e->value == "budgeted") {
      cfg.policy.kind = PolicyKind::BudgetedVolitional;
    } else {
      check(false, "kind", "expected born, volitional or budgeted, got '" + e->value + "'", e);
    }
  }
  if (auto e = find(ini, "policy", "bias_beta")) {
    cfg.policy.bias_beta = to_double("bias_beta", *e);
    check(cfg.policy.bias_beta >= 0.0 && cfg.policy.bias_beta <= 1.0, "bias_beta",
          "must lie in [0, 1]", e);
  }
  if (auto e = find(ini, "policy", "tolerance_delta")) {
    cfg.policy.tolerance_delta = to_double("tolerance_delta", *e);
    check(cfg.policy.tolerance_delta > 0.0 && cfg.policy.tolerance_delta < 0.5, "tolerance_delta",
          "must lie in (0, 0.5)", e);
  }
  if (auto e = find(ini, "policy", "intent")) {
    check(e->value == "R" || e->value == "L", "intent", "expected R or L, got '" + e->value + "'", e);
    cfg.intent = e->value == "R" ? MacroChoice::R : MacroChoice::L;
  }

  // [scenario]
  if (auto e = find(ini, "scenario", "steps")) {
    cfg.scenario.steps = to_u64("steps", *e);
    check(cfg.scenario.steps >= 1, "steps", "must be at least 1", e);
  }
  if (auto e = find(ini, "scenario", "c0")) {
    cfg.scenario.world.c0 = to_double("c0", *e);
    check(cfg.scenario.world.c0 >= 0.0, "c0", "must be >= 0", e);
  }
  if (auto e = find(ini, "scenario", "slope")) cfg.scenario.world.slope = to_double("slope", *e);
  if (auto e = find(ini, "scenario", "start")) cfg.scenario.start = to_i64("start", *e);

  // [audit]
  if (auto e = find(ini, "audit", "alpha")) {
    cfg.audit.alpha = to_double("alpha", *e);
    check(cfg.audit.alpha > 0.0 && cfg.audit.alpha < 1.0, "alpha", "must lie in (0, 1)", e);
  }
  if (auto e = find(ini, "audit", "pool_systems")) cfg.audit.pool_systems = to_bool("pool_systems", *e);

  // [run]
  if (auto e = find(ini, "run", "seed")) cfg.run.seed = to_u64("seed", *e);
  if (auto e = find(ini, "run", "replicates")) {
    cfg.run.replicates = to_u64("replicates", *e);
    check(cfg.run.replicates >= 1, "replicates", "must be at least 1", e);
  }
  if (auto e = find(ini, "run", "workers")) {
    cfg.run.workers = to_u64("workers", *e);
    check(cfg.run.workers >= 1, "workers", "must be at least 1", e);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

PowerGrid parse_grid(std::string_view text) {
  const Ini ini = parse_ini(text, {{"grid", {"n_systems", "beta", "trials"}}});
  PowerGrid grid;
  for (const char* key : {"n_systems", "beta", "trials"}) {
    const Entry* e = find(ini, "grid", key);
    if (!e) throw ValidationError(key, "required in [grid]");
    const std::string field = key;
    for (const auto& item : to_list(field, *e)) {
      const Entry one{item, e->line};
      if (field == "beta") {
        const double b = to_double(field, one);
        check(b >= 0.0 && b <= 1.0, field, "must lie in [0, 1]", e);
        grid.beta.push_back(b);
      } else {
        const auto v = to_u64(field, one);
        check(v >= 1, field, "must be at least 1", e);
        (field == "n_systems" ? grid.n_systems : grid.trials).push_back(v);
      }
    }
  }
  return grid;
}

PowerGrid load_grid(const std::string& path) { return parse_grid(read_file(path)); }

}  // namespace acqf
