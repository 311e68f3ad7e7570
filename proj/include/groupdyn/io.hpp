#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "groupdyn/fit.hpp"
#include "groupdyn/promises.hpp"
#include "groupdyn/simulate.hpp"

namespace groupdyn {

/// Parse failure carrying the 1-based line number of the first bad record.
struct CsvError : std::runtime_error {
  int line;
  CsvError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
};

namespace detail {

inline std::string_view trim_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

inline long long parse_int_field(std::string_view field, int line) {
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw CsvError(line, "expected an integer, got '" + std::string(field) + "'");
  }
  return value;
}

// Shortest round-trip formatting keeps outputs byte-stable across runs.
inline std::string format_double(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return {buf, static_cast<std::size_t>(len)};
}

}  // namespace detail

/// Reads the `n,count` observation schema. Both columns are integers,
/// n >= 2, counts >= 0. Throws CsvError naming the first bad line.
inline Observations read_observations_csv(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw CsvError(1, "empty input");
  ++line_no;
  if (detail::trim_cr(line) != "n,count") {
    throw CsvError(line_no, "expected header 'n,count'");
  }
  Observations obs;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = detail::trim_cr(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos) {
      throw CsvError(line_no, "expected two comma-separated fields");
    }
    const long long n = detail::parse_int_field(row.substr(0, comma), line_no);
    const long long count =
        detail::parse_int_field(row.substr(comma + 1), line_no);
    if (n < 2) throw CsvError(line_no, "group size must be >= 2");
    if (count < 0) throw CsvError(line_no, "count must be >= 0");
    obs.add(static_cast<int>(n), static_cast<std::uint64_t>(count));
  }
  if (obs.total_groups == 0) {
    throw CsvError(line_no, "no observations with positive count");
  }
  return obs;
}

inline void write_histogram_csv(std::ostream& out, const Histogram& hist) {
  out << "n,weight\n";
  for (const auto& [n, w] : hist.counts) {
    out << n << ',' << detail::format_double(w) << '\n';
  }
}

inline void write_event_log_csv(std::ostream& out, const EventLog& log) {
  out << "ordinal,transition,size_before,size_after,dt\n";
  for (const auto& rec : log) {
    out << rec.ordinal << ','
        << (rec.transition == Transition::join ? "join" : "leave") << ','
        << rec.size_before << ',' << rec.size_after << ','
        << detail::format_double(rec.dt) << '\n';
  }
}

inline nlohmann::json to_json(const PromiseBody& body) {
  nlohmann::json j;
  j["polarity"] = std::string(1, polarity_sign(body.polarity));
  if (body.topics.size() == 1) {
    j["topic"] = body.topics.front();
  } else {
    j["topic"] = body.topics;
  }
  if (body.condition) j["condition"] = *body.condition;
  return j;
}

/// Canonical JSON form: sorted agents, promises ordered as stored (sorted),
/// each with from/to and its body terms.
inline nlohmann::json to_json(const PromiseGraph& graph) {
  nlohmann::json j;
  j["agents"] = graph.agents;
  auto& promises = j["promises"] = nlohmann::json::array();
  for (const auto& p : graph.promises) {
    nlohmann::json entry;
    entry["from"] = p.from;
    entry["to"] = p.to;
    auto& body = entry["body"] = nlohmann::json::array();
    for (const auto& atom : p.body) body.push_back(to_json(atom));
    promises.push_back(std::move(entry));
  }
  return j;
}

inline nlohmann::json to_json(const HierarchyLadder& l) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& level : l.levels) {
    levels.push_back(
        {{"scale", level.contention_scale}, {"mode", level.integer_mode}});
  }
  return levels;
}

inline nlohmann::json to_json(const FitResult& r, const FitConfig& config) {
  nlohmann::json j;
  j["beta_hat"] = r.beta_hat;
  j["n_t_hat"] = r.n_t_hat;
  j["ratio_hat"] = r.ratio_hat;
  j["log_likelihood"] = r.log_likelihood;
  if (r.chi_square) {
    j["chi_square"] = r.chi_square->statistic;
    j["dof"] = r.chi_square->dof;
  } else {
    j["chi_square"] = nullptr;
    j["dof"] = nullptr;
  }
  j["implied_mode"] = r.implied_mode;
  j["ladder"] = to_json(r.implied_ladder);
  j["second_best"] = {{"beta", r.second_grid.beta},
                      {"n_t", r.second_grid.n_t},
                      {"objective", r.second_grid.objective}};
  j["config"] = {{"beta_range", {config.beta_lo, config.beta_hi}},
                 {"n_t_range", {config.n_t_lo, config.n_t_hi}},
                 {"grid_points", config.grid_points},
                 {"refine_tolerance", config.refine_tolerance},
                 {"n_max_cut", r.n_max_cut},
                 {"loss", config.loss == FitLoss::mle ? "mle" : "lsq"}};
  return j;
}

}  // namespace groupdyn
