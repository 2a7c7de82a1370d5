// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "specret/bench/harness.hpp"

#include <memory>
#include <string>

#include "specret/core/errors.hpp"
#include "specret/core/rng.hpp"

namespace specret {

namespace {

constexpr std::uint64_t kPrefillStream = 0x50524546ull;  // "PREF"
// Pre-fill query ids live far above any stream id.
constexpr std::uint64_t kPrefillIdBase = std::uint64_t{1} << 62;

std::vector<std::pair<QueryId, Embedding>> prefill_queries(std::size_t n, std::size_t dim,
                                                           std::uint64_t seed) {
    RngStream rng = RngStream::derive(seed, kPrefillStream);
    std::vector<std::pair<QueryId, Embedding>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(QueryId(kPrefillIdBase + i), Embedding(rng.unit_vector(dim)));
    }
    return out;
}

double mean(double sum, std::size_t n) {
    return sum / static_cast<double>(n);
}

RetrievalOutcome full_only_retrieve(const Embedding& query, std::uint64_t ordinal,
                                    const FullBackend& backend, std::size_t k) {
    FullResult full = backend.retrieve(query.values(), k, ordinal);
    RetrievalOutcome out;
    out.docs = std::move(full.hits);
    out.latency.cloud_seconds = full.cloud_seconds;
    out.latency.total_seconds = full.cloud_seconds;
    out.cloud_rng_draws = full.rng_draws;
    return out;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::FullOnly:
            return "full";
        case Method::ReuseSemantic:
            return "reuse";
        case Method::Has:
            return "has";
    }
    return "unknown";
}

Method parse_method(std::string_view s) {
    if (s == "full") return Method::FullOnly;
    if (s == "reuse") return Method::ReuseSemantic;
    if (s == "has") return Method::Has;
    throw ConfigError("unknown method '" + std::string(s) + "' (expected full, reuse or has)");
}

GroundTruth::GroundTruth(const std::vector<LabeledDoc>& docs, const std::vector<LabeledQuery>& queries) {
    docs_.reserve(docs.size());
    for (const auto& d : docs) docs_.emplace(d.doc_id, &d);
    queries_.reserve(queries.size());
    for (const auto& q : queries) queries_.emplace(q.query_id, &q);
}

bool GroundTruth::golden_hit(const std::vector<DocId>& docs, const LabeledQuery& q) const {
    for (DocId id : docs) {
        const auto it = docs_.find(id);
        if (it != docs_.end() && is_golden(*it->second, q)) return true;
    }
    return false;
}

bool GroundTruth::same_entity(QueryId a, QueryId b) const {
    const auto ia = queries_.find(a);
    const auto ib = queries_.find(b);
    if (ia == queries_.end() || ib == queries_.end()) return false;
    return homology_relation(*ia->second, *ib->second) != Homology::None;
}

CarResult compute_car(const std::vector<TraceRow>& trace) {
    std::size_t accepts = 0;
    std::size_t homologous = 0;
    std::size_t golden = 0;
    for (const auto& row : trace) {
        if (!row.accepted) continue;
        ++accepts;
        if (row.matched_homologous) ++homologous;
        if (row.golden_hit) ++golden;
    }
    if (accepts == 0) return {};
    const double n = static_cast<double>(accepts);
    return CarResult{static_cast<double>(homologous) / n, static_cast<double>(golden) / n};
}

MetricsReport aggregate(const std::vector<TraceRow>& trace) {
    MetricsReport r;
    r.n_queries = trace.size();
    if (trace.empty()) return r;

    std::size_t accepts = 0;
    std::size_t hits = 0;
    std::size_t hits_on_accept = 0;
    double total = 0.0;
    double total_accept = 0.0;
    double total_reject = 0.0;
    for (const auto& row : trace) {
        total += row.total_s;
        if (row.golden_hit) ++hits;
        if (row.accepted) {
            ++accepts;
            total_accept += row.total_s;
            if (row.golden_hit) ++hits_on_accept;
        } else {
            total_reject += row.total_s;
        }
    }
    const std::size_t n = trace.size();
    const std::size_t rejects = n - accepts;
    r.avg_latency_s = mean(total, n);
    r.doc_hit_rate = static_cast<double>(hits) / static_cast<double>(n);
    r.dar = static_cast<double>(accepts) / static_cast<double>(n);
    const CarResult car = compute_car(trace);
    r.car = car.car;
    r.golden_car = car.golden_car;
    if (accepts > 0) {
        r.hit_rate_at_accept = static_cast<double>(hits_on_accept) / static_cast<double>(accepts);
        r.l_at_da = mean(total_accept, accepts);
    }
    if (rejects > 0) r.l_at_dr = mean(total_reject, rejects);
    return r;
}

RetrievalOutcome reuse_retrieve(QueryId id, const Embedding& query, std::uint64_t ordinal,
                                QueryCache& cache, const FullBackend& backend,
                                const LatencyModel& latency, std::size_t k, double threshold) {
    RetrievalOutcome out;
    ScanCost edge_cost{cache.size(), cache.dim(), 0.0};
    const auto nearest = cache.nearest_query(query.values());
    RngStream edge_rng = latency.stream(Stage::Edge, ordinal);
    out.latency.edge_seconds = latency.sample(Stage::Edge, edge_rng, edge_cost);
    if (nearest) out.match_score = nearest->score;
    if (nearest && nearest->score >= threshold) {
        out.accepted = true;
        out.matched_query = nearest->entry->query_id;
        const auto& docs = nearest->entry->doc_ids;
        for (DocId d : docs) {
            out.docs.push_back(Hit{d, inner_product(query.values(), cache.pool_embedding(d))});
        }
        std::sort(out.docs.begin(), out.docs.end(), ranks_before);
    } else {
        FullResult full = backend.retrieve(query.values(), k, ordinal);
        out.latency.cloud_seconds = full.cloud_seconds;
        out.cloud_rng_draws = full.rng_draws;
        out.docs = std::move(full.hits);
        if (!out.docs.empty()) {
            out.evictions = cache.insert(id, query, out.docs, backend.corpus());
        }
    }
    out.latency.total_seconds = out.latency.edge_seconds + out.latency.cloud_seconds;
    return out;
}

MetricsReport run_benchmark(const std::vector<LabeledDoc>& docs, const FlatIndex& corpus,
                            const std::vector<LabeledQuery>& queries, const BenchConfig& cfg) {
    if (cfg.method != Method::Has) {
        // The fuzzy channel is only needed by the speculative method.
        return run_benchmark(docs, corpus, IvfIndex{}, queries, cfg);
    }
    cfg.engine.validate();
    const IvfIndex fuzzy = IvfIndex::build(
        corpus, IvfBuildParams{cfg.engine.n_buckets, cfg.engine.subset_fraction, cfg.engine.seed});
    return run_benchmark(docs, corpus, fuzzy, queries, cfg);
}

MetricsReport run_benchmark(const std::vector<LabeledDoc>& docs, const FlatIndex& corpus,
                            const IvfIndex& fuzzy, const std::vector<LabeledQuery>& queries,
                            const BenchConfig& cfg) {
    cfg.engine.validate();
    const GroundTruth truth(docs, queries);
    const LatencyModel latency(cfg.latency);
    const FullBackend backend(&corpus, latency);
    const std::size_t k = cfg.engine.k;

    std::unique_ptr<SpeculativeRetriever> engine;
    std::unique_ptr<QueryCache> reuse_cache;
    const auto warmup = prefill_queries(cfg.prefill, corpus.dim(), cfg.engine.seed);
    if (cfg.method == Method::Has) {
        engine = std::make_unique<SpeculativeRetriever>(corpus, fuzzy, cfg.engine, cfg.latency);
        for (const auto& [id, q] : warmup) engine->warm(id, q);
    } else if (cfg.method == Method::ReuseSemantic) {
        if (!(cfg.reuse_threshold >= -1.0 && cfg.reuse_threshold <= 1.0)) {
            throw ConfigError("reuse threshold must lie in [-1, 1]");
        }
        reuse_cache = std::make_unique<QueryCache>(cfg.engine.h_max, corpus.dim());
        for (const auto& [id, q] : warmup) {
            reuse_cache->insert(id, q, corpus.topk(q.values(), k), corpus);
        }
    }

    std::vector<TraceRow> trace;
    trace.reserve(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const LabeledQuery& q = queries[i];
        RetrievalOutcome out;
        try {
            switch (cfg.method) {
                case Method::Has:
                    out = engine->retrieve(q.query_id, q.embedding, i);
                    break;
                case Method::ReuseSemantic:
                    out = reuse_retrieve(q.query_id, q.embedding, i, *reuse_cache, backend, latency,
                                         k, cfg.reuse_threshold);
                    break;
                case Method::FullOnly:
                    out = full_only_retrieve(q.embedding, i, backend, k);
                    break;
            }
        } catch (const Error& e) {
            throw RetrievalError("query ordinal " + std::to_string(i) + ": " + e.what());
        }

        TraceRow row;
        row.ordinal = i;
        row.query = q.query_id;
        row.accepted = out.accepted;
        row.matched_query = out.matched_query;
        row.match_score = out.match_score;
        row.matched_homologous = out.matched_query && truth.same_entity(q.query_id, *out.matched_query);
        row.docs = ids_of(out.docs);
        row.golden_hit = truth.golden_hit(row.docs, q);
        row.edge_s = out.latency.edge_seconds;
        row.cloud_s = out.latency.cloud_seconds;
        row.total_s = out.latency.total_seconds;
        trace.push_back(std::move(row));
    }

    MetricsReport report = aggregate(trace);
    report.method = std::string(to_string(cfg.method));
    if (engine) {
        report.cache_mem_bytes = engine->cache_memory_bytes();
        report.cache_entries = engine->cache().size();
    } else if (reuse_cache) {
        report.cache_mem_bytes = reuse_cache->memory_footprint();
        report.cache_entries = reuse_cache->size();
    }
    if (cfg.keep_trace) report.trace = std::move(trace);
    return report;
}

}  // namespace specret
