// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "specret/backend/full_backend.hpp"
#include "specret/backend/latency.hpp"
#include "specret/cache/query_cache.hpp"
#include "specret/engine/engine.hpp"
#include "specret/index/flat_index.hpp"
#include "specret/workload/generator.hpp"

namespace specret {

enum class Method { FullOnly, ReuseSemantic, Has };

std::string_view to_string(Method m) noexcept;
/// Accepts "full", "reuse", "has". Throws ConfigError otherwise.
Method parse_method(std::string_view s);

struct BenchConfig {
    Method method = Method::Has;
    EngineConfig engine;
    LatencyConfig latency;
    /// Cosine threshold for the reuse baseline.
    double reuse_threshold = 0.95;
    /// Random queries cached before the stream starts (not measured).
    std::size_t prefill = 0;
    bool keep_trace = true;
};

struct TraceRow {
    std::uint64_t ordinal = 0;
    QueryId query;
    bool accepted = false;
    std::optional<QueryId> matched_query;
    double match_score = 0.0;
    bool matched_homologous = false;  // matched query targets the same entity
    bool golden_hit = false;          // returned docs contain a golden doc
    double edge_s = 0.0;
    double cloud_s = 0.0;
    double total_s = 0.0;
    std::vector<DocId> docs;

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct MetricsReport {
    std::string method;
    std::size_t n_queries = 0;
    double avg_latency_s = 0.0;
    double doc_hit_rate = 0.0;
    double dar = 0.0;
    std::optional<double> car;
    std::optional<double> golden_car;
    std::optional<double> hit_rate_at_accept;
    std::optional<double> l_at_da;
    std::optional<double> l_at_dr;
    std::size_t cache_mem_bytes = 0;
    std::size_t cache_entries = 0;
    std::vector<TraceRow> trace;
};

/// Labels the harness scores against.
class GroundTruth {
  public:
    GroundTruth(const std::vector<LabeledDoc>& docs, const std::vector<LabeledQuery>& queries);

    [[nodiscard]] bool golden_hit(const std::vector<DocId>& docs, const LabeledQuery& q) const;
    /// False when either query is unknown (e.g. a pre-fill query).
    [[nodiscard]] bool same_entity(QueryId a, QueryId b) const;

  private:
    std::unordered_map<DocId, const LabeledDoc*> docs_;
    std::unordered_map<QueryId, const LabeledQuery*> queries_;
};

struct CarResult {
    std::optional<double> car;
    std::optional<double> golden_car;
};

/// Fraction of accepted rows whose matched query is homologous, and fraction
/// whose docs contain a golden document. Absent when nothing was accepted.
CarResult compute_car(const std::vector<TraceRow>& trace);

/// Aggregates every trace-derived metric. Leaves method and cache fields empty.
MetricsReport aggregate(const std::vector<TraceRow>& trace);

/// Reuse baseline: serve the cached result of the most similar cached query
/// when its cosine similarity is at least `threshold`, else fetch and cache.
RetrievalOutcome reuse_retrieve(QueryId id, const Embedding& query, std::uint64_t ordinal,
                                QueryCache& cache, const FullBackend& backend,
                                const LatencyModel& latency, std::size_t k, double threshold);

/// Replays `queries` in order from a cold cache. Throws RetrievalError naming
/// the failing ordinal if a query fails.
MetricsReport run_benchmark(const std::vector<LabeledDoc>& docs, const FlatIndex& corpus,
                            const std::vector<LabeledQuery>& queries, const BenchConfig& cfg);

/// Same, reusing a prebuilt fuzzy channel (must match cfg.engine).
MetricsReport run_benchmark(const std::vector<LabeledDoc>& docs, const FlatIndex& corpus,
                            const IvfIndex& fuzzy, const std::vector<LabeledQuery>& queries,
                            const BenchConfig& cfg);

}  // namespace specret
