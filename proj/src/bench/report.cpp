// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "specret/bench/report.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "specret/core/errors.hpp"

namespace specret {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json opt(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<double> opt_from(const ordered_json& j, const char* key) {
    const auto& v = j.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
}

ordered_json row_to_json(const TraceRow& r) {
    ordered_json j;
    j["ordinal"] = r.ordinal;
    j["query_id"] = r.query.value;
    j["accepted"] = r.accepted;
    j["matched_query"] = r.matched_query ? ordered_json(r.matched_query->value) : ordered_json(nullptr);
    j["match_score"] = r.match_score;
    j["matched_homologous"] = r.matched_homologous;
    j["golden_hit"] = r.golden_hit;
    j["edge_s"] = r.edge_s;
    j["cloud_s"] = r.cloud_s;
    j["total_s"] = r.total_s;
    auto docs = ordered_json::array();
    for (DocId d : r.docs) docs.push_back(d.value);
    j["docs"] = std::move(docs);
    return j;
}

TraceRow row_from_json(const ordered_json& j) {
    TraceRow r;
    r.ordinal = j.at("ordinal").get<std::uint64_t>();
    r.query = QueryId(j.at("query_id").get<std::uint64_t>());
    r.accepted = j.at("accepted").get<bool>();
    if (!j.at("matched_query").is_null()) r.matched_query = QueryId(j.at("matched_query").get<std::uint64_t>());
    r.match_score = j.at("match_score").get<double>();
    r.matched_homologous = j.at("matched_homologous").get<bool>();
    r.golden_hit = j.at("golden_hit").get<bool>();
    r.edge_s = j.at("edge_s").get<double>();
    r.cloud_s = j.at("cloud_s").get<double>();
    r.total_s = j.at("total_s").get<double>();
    for (const auto& d : j.at("docs")) r.docs.emplace_back(d.get<std::uint64_t>());
    return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(std::move(cur));
    return out;
}

template <typename T>
T parse_field(const std::string& s, std::size_t line) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw DataError("CSV line " + std::to_string(line) + ": bad field '" + s + "'");
    }
    return v;
}

bool parse_bool(const std::string& s, std::size_t line) {
    if (s == "1") return true;
    if (s == "0") return false;
    throw DataError("CSV line " + std::to_string(line) + ": expected 0 or 1, got '" + s + "'");
}

}  // namespace

ReportFormat parse_report_format(std::string_view s) {
    if (s == "json") return ReportFormat::Json;
    if (s == "csv") return ReportFormat::Csv;
    throw ConfigError("unknown report format '" + std::string(s) + "' (expected json or csv)");
}

const std::vector<std::string>& metric_keys() {
    static const std::vector<std::string> keys = {
        "avg_latency_s", "doc_hit_rate", "dar",     "car",           "golden_car",
        "hit_rate_at_accept", "l_at_da", "l_at_dr", "cache_mem_bytes", "cache_entries"};
    return keys;
}

const std::vector<std::string>& trace_columns() {
    static const std::vector<std::string> cols = {
        "ordinal",    "query_id", "accepted", "matched_query", "match_score", "matched_homologous",
        "golden_hit", "edge_s",   "cloud_s",  "total_s",       "docs"};
    return cols;
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void emit_json(std::ostream& out, const MetricsReport& report, bool with_trace) {
    ordered_json j;
    j["schema"] = kReportSchema;
    j["method"] = report.method;
    j["n_queries"] = report.n_queries;
    ordered_json m;
    m["avg_latency_s"] = report.avg_latency_s;
    m["doc_hit_rate"] = report.doc_hit_rate;
    m["dar"] = report.dar;
    m["car"] = opt(report.car);
    m["golden_car"] = opt(report.golden_car);
    m["hit_rate_at_accept"] = opt(report.hit_rate_at_accept);
    m["l_at_da"] = opt(report.l_at_da);
    m["l_at_dr"] = opt(report.l_at_dr);
    m["cache_mem_bytes"] = report.cache_mem_bytes;
    m["cache_entries"] = report.cache_entries;
    j["metrics"] = std::move(m);
    if (with_trace) {
        auto rows = ordered_json::array();
        for (const auto& r : report.trace) rows.push_back(row_to_json(r));
        j["trace"] = std::move(rows);
    }
    out << j.dump(2) << '\n';
}

void emit_csv(std::ostream& out, const MetricsReport& report) {
    const auto& cols = trace_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : report.trace) {
        out << r.ordinal << ',' << r.query.value << ',' << (r.accepted ? 1 : 0) << ',';
        if (r.matched_query) out << r.matched_query->value;
        out << ',' << format_double(r.match_score) << ',' << (r.matched_homologous ? 1 : 0) << ','
            << (r.golden_hit ? 1 : 0) << ',' << format_double(r.edge_s) << ','
            << format_double(r.cloud_s) << ',' << format_double(r.total_s) << ',';
        for (std::size_t i = 0; i < r.docs.size(); ++i) out << (i ? ";" : "") << r.docs[i].value;
        out << '\n';
    }
}

void emit_report(const std::filesystem::path& path, const MetricsReport& report,
                 ReportFormat format, bool with_trace) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open report for writing: " + path.string());
    if (format == ReportFormat::Json) {
        emit_json(out, report, with_trace);
    } else {
        emit_csv(out, report);
    }
    out.flush();
    if (!out) throw IoError("failed writing report: " + path.string());
}

MetricsReport parse_json_report(std::istream& in) {
    try {
        const auto j = ordered_json::parse(in);
        if (j.at("schema").get<std::string>() != kReportSchema) {
            throw DataError("unsupported report schema");
        }
        MetricsReport r;
        r.method = j.at("method").get<std::string>();
        r.n_queries = j.at("n_queries").get<std::size_t>();
        const auto& m = j.at("metrics");
        r.avg_latency_s = m.at("avg_latency_s").get<double>();
        r.doc_hit_rate = m.at("doc_hit_rate").get<double>();
        r.dar = m.at("dar").get<double>();
        r.car = opt_from(m, "car");
        r.golden_car = opt_from(m, "golden_car");
        r.hit_rate_at_accept = opt_from(m, "hit_rate_at_accept");
        r.l_at_da = opt_from(m, "l_at_da");
        r.l_at_dr = opt_from(m, "l_at_dr");
        r.cache_mem_bytes = m.at("cache_mem_bytes").get<std::size_t>();
        r.cache_entries = m.at("cache_entries").get<std::size_t>();
        if (j.contains("trace")) {
            for (const auto& row : j.at("trace")) r.trace.push_back(row_from_json(row));
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed report: ") + e.what());
    }
}

std::vector<TraceRow> parse_csv_trace(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty CSV report");
    const auto& cols = trace_columns();
    if (split(line, ',') != cols) throw DataError("CSV header does not match the trace schema");
    std::vector<TraceRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != cols.size()) {
            throw DataError("CSV line " + std::to_string(lineno) + ": wrong field count");
        }
        TraceRow r;
        r.ordinal = parse_field<std::uint64_t>(f[0], lineno);
        r.query = QueryId(parse_field<std::uint64_t>(f[1], lineno));
        r.accepted = parse_bool(f[2], lineno);
        if (!f[3].empty()) r.matched_query = QueryId(parse_field<std::uint64_t>(f[3], lineno));
        r.match_score = parse_field<double>(f[4], lineno);
        r.matched_homologous = parse_bool(f[5], lineno);
        r.golden_hit = parse_bool(f[6], lineno);
        r.edge_s = parse_field<double>(f[7], lineno);
        r.cloud_s = parse_field<double>(f[8], lineno);
        r.total_s = parse_field<double>(f[9], lineno);
        if (!f[10].empty()) {
            for (const auto& d : split(f[10], ';')) r.docs.emplace_back(parse_field<std::uint64_t>(d, lineno));
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace specret
