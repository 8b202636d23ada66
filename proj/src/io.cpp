#include "acqf/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

namespace acqf {

using nlohmann::json;

std::string format_fixed9(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", value);
  return buf;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string_view rest = line;
  if (!rest.empty() && rest.back() == '\r') rest.remove_suffix(1);
  while (true) {
    const auto comma = rest.find(',');
    out.emplace_back(rest.substr(0, comma));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

template <class T>
T parse_number(const std::string& s, std::size_t line, const char* field) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw LogFormatError(line, std::string("bad ") + field + " '" + s + "'");
  }
  return v;
}

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double real_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace

void write_events_csv(std::ostream& out, const std::vector<std::vector<DecisionEvent>>& replicates) {
  out << kEventsHeader << '\n';
  for (std::size_t r = 0; r < replicates.size(); ++r) {
    for (const auto& ev : replicates[r]) {
      out << ev.step << ',' << r << ',' << ev.channel.system_id << ',' << ev.channel.ready_label
          << ',' << ev.channel.observable_label << ',' << format_fixed9(ev.born_p_plus) << ','
          << to_string(ev.outcome) << ',' << to_string(macro_from_outcome(ev.outcome)) << ','
          << (ev.overridden ? 1 : 0) << '\n';
    }
  }
}

std::vector<EventLogRow> read_events_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw LogFormatError(1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kEventsHeader) throw LogFormatError(1, "header does not match the events schema");

  std::vector<EventLogRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != 9) throw LogFormatError(line_no, "expected 9 fields");
    EventLogRow row;
    auto& ev = row.event;
    ev.step = parse_number<std::size_t>(f[0], line_no, "step");
    row.replicate = parse_number<std::size_t>(f[1], line_no, "replicate");
    ev.channel.system_id = parse_number<std::size_t>(f[2], line_no, "system_id");
    ev.channel.ready_label = f[3];
    ev.channel.observable_label = f[4];
    if (f[3].empty() || f[4].empty()) throw LogFormatError(line_no, "empty label");
    ev.born_p_plus = parse_number<double>(f[5], line_no, "born_p_plus");
    if (!(ev.born_p_plus >= 0.0 && ev.born_p_plus <= 1.0)) {
      throw LogFormatError(line_no, "born_p_plus outside [0, 1]");
    }
    if (f[6] == "P") {
      ev.outcome = Outcome::Plus;
    } else if (f[6] == "M") {
      ev.outcome = Outcome::Minus;
    } else {
      throw LogFormatError(line_no, "outcome must be P or M");
    }
    if (f[7] != to_string(macro_from_outcome(ev.outcome))) {
      throw LogFormatError(line_no, "macro disagrees with outcome");
    }
    if (f[8] != "0" && f[8] != "1") throw LogFormatError(line_no, "overridden must be 0 or 1");
    ev.overridden = f[8] == "1";
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "step,position\n";
  for (std::size_t t = 0; t < trajectory.positions.size(); ++t) {
    out << t << ',' << trajectory.positions[t] << '\n';
  }
}

void write_audit_csv(std::ostream& out, const AuditReport& report) {
  out << "system_id,ready_label,observable_label,n_plus,n_minus,born_p_plus,p_value\n";
  for (const auto& s : report.per_channel) {
    char p[64];
    std::snprintf(p, sizeof p, "%.9e", s.p_value);
    out << s.channel.system_id << ',' << s.channel.ready_label << ',' << s.channel.observable_label
        << ',' << s.n_plus << ',' << s.n_minus << ',' << format_fixed9(s.born_p_plus) << ',' << p
        << '\n';
  }
}

void to_json(json& j, const ChannelStats& s) {
  j = json{{"system_id", s.channel.system_id},
           {"ready_label", s.channel.ready_label},
           {"observable_label", s.channel.observable_label},
           {"n_plus", s.n_plus},
           {"n_minus", s.n_minus},
           {"born_p_plus", s.born_p_plus},
           {"p_value", s.p_value}};
}

void from_json(const json& j, ChannelStats& s) {
  j.at("system_id").get_to(s.channel.system_id);
  j.at("ready_label").get_to(s.channel.ready_label);
  j.at("observable_label").get_to(s.channel.observable_label);
  j.at("n_plus").get_to(s.n_plus);
  j.at("n_minus").get_to(s.n_minus);
  j.at("born_p_plus").get_to(s.born_p_plus);
  j.at("p_value").get_to(s.p_value);
}

void to_json(json& j, const AuditReport& r) {
  j = json{{"alpha", r.alpha},
           {"pool_systems", r.pool_systems},
           {"n_channels", r.per_channel.size()},
           {"per_channel", r.per_channel},
           {"fisher_statistic", real_or_null(r.fisher_statistic)},
           {"fisher_p", r.fisher_p},
           {"bonferroni_p", r.bonferroni_p},
           {"g_statistic", real_or_null(r.g_statistic)},
           {"verdict", to_string(r.verdict)},
           {"continuity_correction", false}};
}

void from_json(const json& j, AuditReport& r) {
  j.at("alpha").get_to(r.alpha);
  j.at("pool_systems").get_to(r.pool_systems);
  j.at("per_channel").get_to(r.per_channel);
  r.fisher_statistic = real_from(j.at("fisher_statistic"));
  j.at("fisher_p").get_to(r.fisher_p);
  j.at("bonferroni_p").get_to(r.bonferroni_p);
  r.g_statistic = real_from(j.at("g_statistic"));
  const auto v = j.at("verdict").get<std::string>();
  if (v != "Violation" && v != "Consistent") throw std::invalid_argument("unknown verdict " + v);
  r.verdict = v == "Violation" ? Verdict::Violation : Verdict::Consistent;
}

RunSummary summarize(const RunConfig& config, std::uint64_t seed,
                     const std::vector<std::vector<DecisionEvent>>& replicates) {
  RunSummary s;
  s.seed = seed;
  s.replicates = replicates.size();
  s.steps = config.scenario.steps;
  s.n_systems = config.pool.n_systems;
  s.policy = to_string(config.policy.kind);
  s.bias_beta = config.policy.bias_beta;
  s.tolerance_delta = config.policy.tolerance_delta;
  s.intent = to_string(config.intent);
  s.baseline_macro_drift = baseline_macro_drift(config.pool);
  double total = 0.0;
  for (std::size_t r = 0; r < replicates.size(); ++r) {
    ReplicateSummary rs;
    rs.replicate = r;
    rs.events = replicates[r].size();
    for (const auto& ev : replicates[r]) {
      rs.r_count += ev.outcome == Outcome::Plus;
      rs.overridden += ev.overridden;
    }
    rs.r_fraction = rs.events ? static_cast<double>(rs.r_count) / static_cast<double>(rs.events) : 0.0;
    total += rs.r_fraction;
    s.per_replicate.push_back(rs);
  }
  s.mean_r_fraction = replicates.empty() ? 0.0 : total / static_cast<double>(replicates.size());
  return s;
}

void to_json(json& j, const ReplicateSummary& s) {
  j = json{{"replicate", s.replicate},
           {"events", s.events},
           {"r_count", s.r_count},
           {"overridden", s.overridden},
           {"r_fraction", s.r_fraction}};
}

void from_json(const json& j, ReplicateSummary& s) {
  j.at("replicate").get_to(s.replicate);
  j.at("events").get_to(s.events);
  j.at("r_count").get_to(s.r_count);
  j.at("overridden").get_to(s.overridden);
  j.at("r_fraction").get_to(s.r_fraction);
}

void to_json(json& j, const RunSummary& s) {
  j = json{{"seed", s.seed},
           {"replicates", s.replicates},
           {"steps", s.steps},
           {"n_systems", s.n_systems},
           {"policy", s.policy},
           {"bias_beta", s.bias_beta},
           {"tolerance_delta", s.tolerance_delta},
           {"intent", s.intent},
           {"baseline_macro_drift", s.baseline_macro_drift},
           {"mean_r_fraction", s.mean_r_fraction},
           {"per_replicate", s.per_replicate}};
}

void from_json(const json& j, RunSummary& s) {
  j.at("seed").get_to(s.seed);
  j.at("replicates").get_to(s.replicates);
  j.at("steps").get_to(s.steps);
  j.at("n_systems").get_to(s.n_systems);
  j.at("policy").get_to(s.policy);
  j.at("bias_beta").get_to(s.bias_beta);
  j.at("tolerance_delta").get_to(s.tolerance_delta);
  j.at("intent").get_to(s.intent);
  j.at("baseline_macro_drift").get_to(s.baseline_macro_drift);
  j.at("mean_r_fraction").get_to(s.mean_r_fraction);
  j.at("per_replicate").get_to(s.per_replicate);
}

void write_power_csv(std::ostream& out, const std::vector<PowerRow>& rows) {
  out << kPowerHeader << '\n';
  for (const auto& r : rows) {
    out << r.n_systems << ',' << format_fixed9(r.beta) << ',' << r.trials << ','
        << format_fixed9(r.power) << ',' << format_fixed9(r.stderr_) << '\n';
  }
}

std::vector<PowerRow> read_power_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw LogFormatError(1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kPowerHeader) throw LogFormatError(1, "header does not match the power schema");
  std::vector<PowerRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != 5) throw LogFormatError(line_no, "expected 5 fields");
    rows.push_back({parse_number<std::size_t>(f[0], line_no, "n_systems"),
                    parse_number<double>(f[1], line_no, "beta"),
                    parse_number<std::size_t>(f[2], line_no, "trials"),
                    parse_number<double>(f[3], line_no, "power"),
                    parse_number<double>(f[4], line_no, "stderr")});
  }
  return rows;
}

namespace {

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_power_svg(const std::vector<PowerRow>& rows) {
  constexpr double width = 640, height = 420;
  constexpr double left = 70, right = 190, top = 30, bottom = 60;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#e377c2", "#17becf"};

  std::size_t n_min = std::numeric_limits<std::size_t>::max(), n_max = 0;
  std::map<std::pair<double, std::size_t>, std::vector<std::pair<std::size_t, double>>> series;
  for (const auto& r : rows) {
    n_min = std::min(n_min, r.n_systems);
    n_max = std::max(n_max, r.n_systems);
    series[{r.beta, r.trials}].emplace_back(r.n_systems, r.power);
  }
  const bool log_x = !rows.empty() && static_cast<double>(n_max) > 10.0 * static_cast<double>(n_min);
  auto x_of = [&](std::size_t n) {
    if (rows.empty() || n_max == n_min) return left + plot_w / 2;
    const double a = log_x ? std::log10(static_cast<double>(n_min)) : static_cast<double>(n_min);
    const double b = log_x ? std::log10(static_cast<double>(n_max)) : static_cast<double>(n_max);
    const double v = log_x ? std::log10(static_cast<double>(n)) : static_cast<double>(n);
    return left + (v - a) / (b - a) * plot_w;
  };
  auto y_of = [&](double p) { return top + (1.0 - std::clamp(p, 0.0, 1.0)) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  // Axes.
  svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double p = i / 4.0;
    svg << "<line x1=\"" << left - 4 << "\" y1=\"" << svg_num(y_of(p)) << "\" x2=\"" << left
        << "\" y2=\"" << svg_num(y_of(p)) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << svg_num(y_of(p) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << svg_num(p) << "</text>\n";
  }
  std::vector<std::size_t> ticks;
  for (const auto& r : rows) ticks.push_back(r.n_systems);
  std::sort(ticks.begin(), ticks.end());
  ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());
  for (auto n : ticks) {
    svg << "<line x1=\"" << svg_num(x_of(n)) << "\" y1=\"" << top + plot_h << "\" x2=\""
        << svg_num(x_of(n)) << "\" y2=\"" << top + plot_h + 4 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << svg_num(x_of(n)) << "\" y=\"" << top + plot_h + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << n << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
      << "\" font-size=\"13\" text-anchor=\"middle\">n_systems" << (log_x ? " (log scale)" : "")
      << "</text>\n";
  svg << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" font-size=\"13\" text-anchor=\"middle\""
      << " transform=\"rotate(-90 18 " << top + plot_h / 2 << ")\">detection power</text>\n";

  std::size_t k = 0;
  for (auto& [key, pts] : series) {
    std::sort(pts.begin(), pts.end());
    const char* color = palette[k % std::size(palette)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      svg << (i ? " " : "") << svg_num(x_of(pts[i].first)) << ',' << svg_num(y_of(pts[i].second));
    }
    svg << "\"/>\n";
    for (const auto& [n, p] : pts) {
      svg << "<circle cx=\"" << svg_num(x_of(n)) << "\" cy=\"" << svg_num(y_of(p))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = top + 10 + 18.0 * static_cast<double>(k);
    const double lx = left + plot_w + 15;
    svg << "<line x1=\"" << lx << "\" y1=\"" << svg_num(ly) << "\" x2=\"" << lx + 20 << "\" y2=\""
        << svg_num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << lx + 26 << "\" y=\"" << svg_num(ly + 4) << "\" font-size=\"11\">"
        << xml_escape("beta=" + svg_num(key.first) + " T=" + std::to_string(key.second))
        << "</text>\n";
    ++k;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace acqf
