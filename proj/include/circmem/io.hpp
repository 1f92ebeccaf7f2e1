#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "circmem/capacity.hpp"
#include "circmem/core.hpp"
#include "circmem/dynamics.hpp"
#include "circmem/errors.hpp"
#include "circmem/search.hpp"

namespace circmem {

/// Parses a comma-separated integer list. Whitespace around entries and a
/// leading sign per entry are accepted; errors report entry number and
/// character offset.
inline std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> values;
  std::size_t pos = 0;
  int token_index = 0;
  for (;;) {
    ++token_index;
    const std::size_t comma = text.find(',', pos);
    std::string_view token =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    const std::size_t token_offset = pos;
    while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
    while (!token.empty() && (token.back() == ' ' || token.back() == '\t')) token.remove_suffix(1);
    if (token.empty())
      raise(ErrorCode::ParseError, "empty entry " + std::to_string(token_index) + " at offset " +
                                       std::to_string(token_offset));

    std::string_view digits = token;
    if (digits.front() == '+') {
      digits.remove_prefix(1);
      if (digits.empty() || digits.front() == '-' || digits.front() == '+') digits = {};
    }
    std::int64_t value = 0;
    const auto [ptr, ec] =
        digits.empty() ? std::from_chars_result{nullptr, std::errc::invalid_argument}
                       : std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      raise(ErrorCode::ParseError, "bad integer '" + std::string(token) + "' (entry " +
                                       std::to_string(token_index) + ", offset " +
                                       std::to_string(token_offset) + ")");
    values.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return values;
}

/// Parses a first row such as "0,2,-5,3" into a validated generator row.
inline GeneratorRow parse_first_row(std::string_view text) {
  const std::vector<std::int64_t> parsed = parse_int_list(text);
  std::vector<std::int32_t> values;
  values.reserve(parsed.size());
  for (std::size_t k = 0; k < parsed.size(); ++k) {
    if (parsed[k] > kWeightLimit || parsed[k] < -kWeightLimit)
      raise(ErrorCode::WeightOutOfRange, "entry " + std::to_string(k + 1) + " value " +
                                             std::to_string(parsed[k]) + " exceeds the bound " +
                                             std::to_string(kWeightLimit));
    values.push_back(static_cast<std::int32_t>(parsed[k]));
  }
  return GeneratorRow(std::move(values));
}

inline std::string render_first_row(const GeneratorRow& row) {
  std::string out;
  for (int k = 0; k < row.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(row.weight(k));
  }
  return out;
}

inline BipolarState parse_state(std::string_view pattern) { return BipolarState::parse(pattern); }

/// On-disk matrix description: {"n": 4, "first_row": [0,2,-5,3], "label": "..."}.
struct MatrixSpec {
  GeneratorRow row{std::vector<std::int32_t>{0}};
  std::string label;
};

inline MatrixSpec parse_matrix_spec(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::ParseError, std::string("matrix spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("first_row") ||
      !doc["n"].is_number_integer() || !doc["first_row"].is_array())
    raise(ErrorCode::ParseError, "matrix spec needs integer 'n' and array 'first_row'");
  std::vector<std::int32_t> values;
  for (const auto& v : doc["first_row"]) {
    if (!v.is_number_integer())
      raise(ErrorCode::ParseError, "first_row entries must be integers");
    values.push_back(v.get<std::int32_t>());
  }
  if (doc["n"].get<std::int64_t>() != static_cast<std::int64_t>(values.size()))
    raise(ErrorCode::ParseError, "'n' does not match first_row length");
  MatrixSpec spec{GeneratorRow(std::move(values)), ""};
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) raise(ErrorCode::ParseError, "'label' must be a string");
    spec.label = doc["label"].get<std::string>();
  }
  return spec;
}

inline MatrixSpec load_matrix_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::ParseError, "cannot open matrix spec: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix_spec(buffer.str());
}

inline std::string render_matrix_spec(const MatrixSpec& spec) {
  nlohmann::ordered_json doc;
  doc["n"] = spec.row.size();
  doc["first_row"] = std::vector<std::int32_t>(spec.row.weights().begin(), spec.row.weights().end());
  if (!spec.label.empty()) doc["label"] = spec.label;
  return doc.dump(2) + "\n";
}

enum class ReportFormat { Text, Json, Csv };

inline std::optional<ReportFormat> parse_format(std::string_view name) {
  if (name == "text") return ReportFormat::Text;
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  return std::nullopt;
}

namespace detail {

/// "[+ + - -]", the display form used for memory lists.
inline std::string pattern_row(const BipolarState& state) {
  std::string out = "[";
  for (int i = 0; i < state.size(); ++i) {
    if (i) out += ' ';
    out += state.spin(i) > 0 ? '+' : '-';
  }
  out += ']';
  return out;
}

inline std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

inline constexpr std::string_view kCapacityCsvHeader =
    "label,n,row_sum,class,total_states,fixed_count,unique_count,rotation_orbits,"
    "expected_fixed,fixed_match,expected_unique,unique_match";

inline std::string capacity_csv_row(const CapacityReport& r) {
  std::string out;
  out += r.label;
  out += ',' + std::to_string(r.n);
  out += ',' + std::to_string(r.row_sum);
  out += ',';
  out += to_string(r.row_class);
  out += ',' + std::to_string(r.total_states);
  out += ',' + std::to_string(r.fixed_count);
  out += ',' + std::to_string(r.unique_count);
  out += ',' + std::to_string(r.rotation_orbit_count);
  out += ',';
  if (r.expected_fixed) out += std::to_string(*r.expected_fixed);
  out += ',';
  if (r.fixed_match) out += *r.fixed_match ? "true" : "false";
  out += ',';
  if (r.expected_unique) out += std::to_string(*r.expected_unique);
  out += ',';
  if (r.unique_match) out += *r.unique_match ? "true" : "false";
  return out;
}

/// Serialized stats carry only scheduling-independent fields, so identical
/// analyses emit identical bytes no matter how they were run.
inline nlohmann::ordered_json capacity_json(const CapacityReport& r) {
  nlohmann::ordered_json doc;
  doc["label"] = r.label;
  doc["n"] = r.n;
  doc["first_row"] = std::vector<std::int32_t>(r.row.weights().begin(), r.row.weights().end());
  doc["row_sum"] = r.row_sum;
  doc["class"] = to_string(r.row_class);
  doc["total_states"] = r.total_states;
  doc["fixed_count"] = r.fixed_count;
  doc["unique_count"] = r.unique_count;
  doc["rotation_orbits"] = r.rotation_orbit_count;
  doc["expected_fixed"] = r.expected_fixed ? nlohmann::ordered_json(*r.expected_fixed) : nullptr;
  doc["fixed_match"] = r.fixed_match ? nlohmann::ordered_json(*r.fixed_match) : nullptr;
  doc["expected_unique"] = r.expected_unique ? nlohmann::ordered_json(*r.expected_unique) : nullptr;
  doc["unique_match"] = r.unique_match ? nlohmann::ordered_json(*r.unique_match) : nullptr;
  doc["unique_rule_trusted"] = r.unique_rule_trusted;
  if (r.fixed_points) {
    auto list = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.fixed_points->size(); ++i) {
      const BipolarState s = r.fixed_points->state_at(i);
      list.push_back({{"index", s.packed()}, {"pattern", s.pattern()}});
    }
    doc["fixed_points"] = std::move(list);
  } else {
    doc["fixed_points"] = nullptr;
  }
  doc["stats"] = {{"states_examined", r.stats.states_examined},
                  {"fixed_found", r.stats.fixed_found}};
  return doc;
}

inline std::string capacity_text(const CapacityReport& r) {
  std::ostringstream out;
  out << "matrix " << (r.label.empty() ? "(unlabeled)" : r.label) << "\n";
  out << "  n               : " << r.n << "\n";
  out << "  first row       : " << render_first_row(r.row) << "\n";
  out << "  row sum         : " << r.row_sum << " (" << to_string(r.row_class) << ")\n";
  out << "  total states    : " << r.total_states << "\n";
  out << "  fixed points    : " << r.fixed_count << "\n";
  out << "  unique memories : " << r.unique_count << "\n";
  out << "  rotation orbits : " << r.rotation_orbit_count << "\n";
  if (r.expected_fixed)
    out << "  expected fixed  : " << *r.expected_fixed << (*r.fixed_match ? " (match)" : " (DIFFERS)")
        << "\n";
  if (r.expected_unique)
    out << "  expected unique : " << *r.expected_unique << (r.unique_rule_trusted ? " (trusted" : " (untrusted")
        << (*r.unique_match ? ", match)" : ", differs)") << "\n";
  if (r.fixed_points) {
    out << "  memories:\n";
    for (std::size_t i = 0; i < r.fixed_points->size(); ++i)
      out << "    " << pattern_row(r.fixed_points->state_at(i)) << "\n";
  }
  return out.str();
}

inline nlohmann::ordered_json suite_json(const SuiteReport& suite) {
  nlohmann::ordered_json doc;
  doc["overall"] = to_string(suite.overall);
  doc["matched"] = suite.matched;
  doc["discrepancies"] = suite.discrepancies;
  doc["failures"] = suite.failures;
  auto entries = nlohmann::ordered_json::array();
  for (const SuiteEntryResult& e : suite.entries) {
    nlohmann::ordered_json item = capacity_json(e.report);
    item["enumerators_agree"] = e.enumerators_agree;
    item["status"] = to_string(e.status);
    item["notes"] = e.notes;
    entries.push_back(std::move(item));
  }
  doc["entries"] = std::move(entries);
  return doc;
}

inline std::string suite_text(const SuiteReport& suite) {
  std::ostringstream out;
  for (const SuiteEntryResult& e : suite.entries) {
    const CapacityReport& r = e.report;
    char line[160];
    std::snprintf(line, sizeof line, "%-14s n=%2d  fixed=%4llu", r.label.c_str(), r.n,
                  static_cast<unsigned long long>(r.fixed_count));
    out << line;
    if (r.expected_fixed) out << " expected=" << *r.expected_fixed;
    out << "  unique=" << r.unique_count;
    if (r.expected_unique)
      out << " expected=" << *r.expected_unique << (r.unique_rule_trusted ? "*" : "");
    out << "  agree=" << (e.enumerators_agree ? "yes" : "NO");
    out << "  " << to_string(e.status);
    for (std::size_t i = 0; i < e.notes.size(); ++i) out << (i ? "; " : ": ") << e.notes[i];
    out << "\n";
  }
  out << to_string(suite.overall) << ": " << suite.matched << " matched, " << suite.discrepancies
      << " discrepancies, " << suite.failures << " failures across " << suite.entries.size()
      << " entries (* = trusted unique rule)\n";
  return out.str();
}

inline std::string suite_csv(const SuiteReport& suite) {
  std::string out{kCapacityCsvHeader};
  out += '\n';
  for (const SuiteEntryResult& e : suite.entries) {
    out += capacity_csv_row(e.report);
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json search_json(const SearchReport& report) {
  nlohmann::ordered_json doc;
  doc["config"] = {{"n", report.config.n},
                   {"trials", report.config.trials},
                   {"weight_min", report.config.weight_min},
                   {"weight_max", report.config.weight_max},
                   {"row_sum_target", report.config.row_sum_target
                                          ? nlohmann::ordered_json(*report.config.row_sum_target)
                                          : nullptr},
                   {"seed", report.config.seed},
                   {"max_rejections_per_trial", report.config.max_rejections_per_trial}};
  doc["accepted"] = report.accepted;
  doc["exhausted_trials"] = report.exhausted_trials;
  auto hist = nlohmann::ordered_json::array();
  for (const auto& [fixed, count] : report.histogram)
    hist.push_back({{"fixed_count", fixed}, {"matrices", count}});
  doc["histogram"] = std::move(hist);
  doc["mean_fixed"] = report.mean_fixed;
  doc["max_fixed"] = report.max_fixed;
  if (report.best_row) {
    doc["best"] = {{"trial", report.best_trial},
                   {"first_row", std::vector<std::int32_t>(report.best_row->weights().begin(),
                                                           report.best_row->weights().end())},
                   {"fixed_count", report.max_fixed}};
  } else {
    doc["best"] = nullptr;
  }
  return doc;
}

inline std::string search_text(const SearchReport& report) {
  std::ostringstream out;
  out << "random search: n=" << report.config.n << " trials=" << report.config.trials
      << " weights=[" << report.config.weight_min << "," << report.config.weight_max << "]";
  if (report.config.row_sum_target) out << " row_sum=" << *report.config.row_sum_target;
  out << " seed=" << report.config.seed << "\n";
  out << "  accepted        : " << report.accepted << "\n";
  out << "  exhausted trials: " << report.exhausted_trials << "\n";
  out << "  fixed-count histogram:\n";
  for (const auto& [fixed, count] : report.histogram)
    out << "    " << fixed << " -> " << count << "\n";
  if (report.accepted > 0) {
    out << "  mean fixed      : " << format_double(report.mean_fixed) << "\n";
    out << "  max fixed       : " << report.max_fixed << " (trial " << report.best_trial
        << ", first row " << render_first_row(*report.best_row) << ")\n";
  }
  return out.str();
}

inline std::string search_csv(const SearchReport& report) {
  std::string out = "fixed_count,matrices\n";
  for (const auto& [fixed, count] : report.histogram)
    out += std::to_string(fixed) + ',' + std::to_string(count) + '\n';
  return out;
}

}  // namespace detail

inline std::string emit_report(const CapacityReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return detail::capacity_json(report).dump(2) + "\n";
    case ReportFormat::Csv:
      return std::string(detail::kCapacityCsvHeader) + "\n" + detail::capacity_csv_row(report) + "\n";
    case ReportFormat::Text: return detail::capacity_text(report);
  }
  return {};
}

inline std::string emit_report(const SuiteReport& suite, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return detail::suite_json(suite).dump(2) + "\n";
    case ReportFormat::Csv: return detail::suite_csv(suite);
    case ReportFormat::Text: return detail::suite_text(suite);
  }
  return {};
}

inline std::string emit_report(const SearchReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return detail::search_json(report).dump(2) + "\n";
    case ReportFormat::Csv: return detail::search_csv(report);
    case ReportFormat::Text: return detail::search_text(report);
  }
  return {};
}

inline std::string emit_figure_csv(const std::vector<FigurePoint>& points) {
  std::string out = "n,fixed_count,label\n";
  for (const FigurePoint& p : points)
    out += std::to_string(p.n) + ',' + std::to_string(p.fixed_count) + ',' + p.label + '\n';
  return out;
}

inline std::string describe(const TrajectoryOutcome& outcome) {
  switch (outcome.kind) {
    case TrajectoryOutcome::Kind::FixedPoint:
      return "fixed point " + detail::pattern_row(outcome.state) + " reached after " +
             std::to_string(outcome.steps) + " steps";
    case TrajectoryOutcome::Kind::Cycle:
      return "cycle of period " + std::to_string(outcome.period) + " entered after " +
             std::to_string(outcome.steps) + " steps at " + detail::pattern_row(outcome.state);
    case TrajectoryOutcome::Kind::MaxItersExceeded:
      return "no repeat within " + std::to_string(outcome.steps) + " steps; last state " +
             detail::pattern_row(outcome.state);
  }
  return {};
}

}  // namespace circmem
