#pragma once

#include <map>
#include <span>
#include <string>

#include "json.hpp"

#include "mptsc/protocol.hpp"

namespace mptsc {

inline constexpr int kReportSchemaVersion = 1;

/// Plain-text accuracy tables: one "Up Wind versus Down Wind" table per
/// variant (tasks as columns) and one "High versus Low" table (variants as columns).
std::string format_tables(std::span<const EvalReport> reports);

/// "Average model accuracy across all tasks" listing.
std::string format_summary(const Summary& summary);

/// Machine-readable report: one record per model x task x variant.
nlohmann::json report_to_json(std::span<const EvalReport> reports, const Summary& summary);

/// Tab-separated prediction log with a comment header. One line per model
/// and test query: model, query id, truth, predicted, `id:distance` neighbors.
std::string format_prediction_log(const EvalReport& report);

/// True when `percent` is the two-decimal rounding of 100*j/total for some integer j.
bool matches_granularity(double percent, std::size_t total);

/// Per-model accuracy percentages (two decimals) recomputed from a prediction log.
std::map<std::string, double> accuracies_from_log(std::string_view log);

/// Filesystem-safe slug of a task name ("0 vs 1 vs 22" -> "0_vs_1_vs_22").
std::string slug(std::string_view name);

}  // namespace mptsc
