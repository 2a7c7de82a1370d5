// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "specret/engine/engine.hpp"

#include <chrono>
#include <cmath>
#include <mutex>

#include "specret/core/errors.hpp"

namespace specret {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

RankedHits truncated(RankedHits hits, std::size_t k) {
    if (hits.size() > k) hits.resize(k);
    return hits;
}

}  // namespace

void EngineConfig::validate() const {
    if (k == 0) throw ConfigError("k must be at least 1");
    if (!(tau >= 0.0 && tau <= 1.0)) throw ConfigError("tau must lie in [0, 1]");
    if (h_max == 0) throw ConfigError("h_max must be at least 1");
    if (n_buckets == 0) throw ConfigError("n_buckets must be at least 1");
    if (n_probe == 0 || n_probe > n_buckets) throw ConfigError("n_probe must lie in [1, n_buckets]");
    if (!(subset_fraction > 0.0 && subset_fraction <= 1.0)) {
        throw ConfigError("subset_fraction must lie in (0, 1]");
    }
}

SpeculativeRetriever::SpeculativeRetriever(const FlatIndex& corpus, EngineConfig config,
                                           LatencyConfig latency)
    : SpeculativeRetriever(corpus,
                           [&] {
                               config.validate();
                               return IvfIndex::build(
                                   corpus, IvfBuildParams{config.n_buckets, config.subset_fraction,
                                                          config.seed});
                           }(),
                           config, latency) {}

SpeculativeRetriever::SpeculativeRetriever(const FlatIndex& corpus, IvfIndex fuzzy,
                                           EngineConfig config, LatencyConfig latency)
    : corpus_(&corpus),
      config_(config),
      latency_(latency),
      backend_(&corpus, latency_),
      fuzzy_(std::move(fuzzy)),
      cache_(config.h_max, corpus.dim()) {
    config_.validate();
    if (fuzzy_.dim() != corpus.dim()) {
        throw DimError("fuzzy channel dimension differs from corpus");
    }
    if (config_.n_probe > fuzzy_.n_buckets()) {
        throw ConfigError("n_probe exceeds the fuzzy channel's bucket count");
    }
}

SpeculativeRetriever::Channels SpeculativeRetriever::search_channels(std::span<const float> query,
                                                                     bool need_fuzzy) const {
    Channels ch;
    ch.cost.dim = corpus_->dim();

    auto start = std::chrono::steady_clock::now();
    ch.cache_hits = cache_.channel_topk(query, config_.k);
    ch.cost.vectors += cache_.pool_size();
    ch.cost.measured_seconds += seconds_since(start);

    if (need_fuzzy) {
        start = std::chrono::steady_clock::now();
        ch.fuzzy_hits = fuzzy_.topk(query, config_.k, config_.n_probe);
        ch.cost.measured_seconds += seconds_since(start);
        ch.cost.vectors += fuzzy_.n_buckets();
        for (std::size_t b : fuzzy_.probe_order(query, config_.n_probe)) {
            ch.cost.vectors += fuzzy_.bucket(b).ids.size();
        }
    }
    return ch;
}

Draft SpeculativeRetriever::build_draft(std::span<const float> query) const {
    std::shared_lock lock(cache_mutex_);
    const Channels ch = search_channels(query, true);
    return merge_draft(ch.cache_hits, ch.fuzzy_hits, config_.k);
}

RetrievalOutcome SpeculativeRetriever::retrieve(QueryId id, const Embedding& query,
                                                std::uint64_t ordinal) {
    check_query(query.values(), corpus_->dim());
    RetrievalOutcome out;
    ScanCost edge_cost;
    {
        std::shared_lock lock(cache_mutex_);
        const bool need_fuzzy = config_.fuzzy_validation || config_.fuzzy_enhancement;
        Channels ch = search_channels(query.values(), need_fuzzy);
        edge_cost = ch.cost;

        const Draft merged = merge_draft(ch.cache_hits, ch.fuzzy_hits, config_.k);
        const RankedHits& probe =
            config_.fuzzy_validation ? merged.hits : ch.cache_hits;

        ValidationResult verdict =
            config_.scoring == ScoringMode::Full
                ? validate(score_homology(probe, cache_, config_.k), config_.tau)
                : validate_early_exit(probe, cache_, config_.k, config_.tau);
        out.match_score = verdict.score;
        if (verdict.accepted) {
            out.accepted = true;
            out.matched_query = verdict.matched_query;
            out.docs = config_.fuzzy_enhancement ? merged.hits : truncated(ch.cache_hits, config_.k);
        }
    }

    RngStream edge_rng = latency_.stream(Stage::Edge, ordinal);
    out.latency.edge_seconds = latency_.sample(Stage::Edge, edge_rng, edge_cost);
    latency_.charge(out.latency.edge_seconds);

    if (!out.accepted) {
        FullResult full;
        try {
            full = backend_.retrieve(query.values(), config_.k, ordinal);
        } catch (const Error& e) {
            throw RetrievalError(std::string("full-database fallback failed: ") + e.what());
        }
        out.latency.cloud_seconds = full.cloud_seconds;
        out.cloud_rng_draws = full.rng_draws;
        out.docs = std::move(full.hits);
        if (!out.docs.empty()) {
            std::unique_lock lock(cache_mutex_);
            out.evictions = cache_.insert(id, query, out.docs, *corpus_);
        }
    }
    out.latency.total_seconds = out.latency.edge_seconds + out.latency.cloud_seconds;
    return out;
}

void SpeculativeRetriever::warm(QueryId id, const Embedding& query) {
    const RankedHits hits = corpus_->topk(query.values(), config_.k);
    if (hits.empty()) return;
    std::unique_lock lock(cache_mutex_);
    cache_.insert(id, query, hits, *corpus_);
}

std::size_t SpeculativeRetriever::cache_memory_bytes() const {
    std::shared_lock lock(cache_mutex_);
    return cache_.memory_footprint();
}

}  // namespace specret
