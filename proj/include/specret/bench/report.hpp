// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "specret/bench/harness.hpp"

// Report schema (JSON, keys in this order):
//   schema            "specret.report/1"
//   method, n_queries
//   metrics           avg_latency_s, doc_hit_rate, dar, car, golden_car,
//                     hit_rate_at_accept, l_at_da, l_at_dr (null when undefined),
//                     cache_mem_bytes, cache_entries
//   trace             optional array of rows with the CSV columns below
//
// CSV holds the trace only, one row per query, header always present:
//   ordinal,query_id,accepted,matched_query,match_score,matched_homologous,
//   golden_hit,edge_s,cloud_s,total_s,docs
// matched_query is empty when absent; docs are ';'-separated ids.

namespace specret {

enum class ReportFormat { Json, Csv };

ReportFormat parse_report_format(std::string_view s);

inline constexpr const char* kReportSchema = "specret.report/1";

const std::vector<std::string>& metric_keys();
const std::vector<std::string>& trace_columns();

void emit_json(std::ostream& out, const MetricsReport& report, bool with_trace);
void emit_csv(std::ostream& out, const MetricsReport& report);

/// Writes to `path`; throws IoError if it cannot be opened.
void emit_report(const std::filesystem::path& path, const MetricsReport& report,
                 ReportFormat format, bool with_trace);

/// Throws DataError on schema violations.
MetricsReport parse_json_report(std::istream& in);
std::vector<TraceRow> parse_csv_trace(std::istream& in);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace specret
