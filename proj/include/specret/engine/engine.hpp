// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <span>
#include <vector>

#include "specret/backend/full_backend.hpp"
#include "specret/backend/latency.hpp"
#include "specret/cache/query_cache.hpp"
#include "specret/core/embedding.hpp"
#include "specret/engine/homology.hpp"
#include "specret/index/flat_index.hpp"
#include "specret/index/ivf_index.hpp"

namespace specret {

enum class ScoringMode {
    /// Score every cached entry hit by the draft; match the best one.
    Full,
    /// Stop at the first entry that clears the threshold.
    EarlyExit,
};

struct EngineConfig {
    std::size_t k = 10;
    double tau = 0.2;
    std::size_t h_max = kDefaultCacheCapacity;
    std::size_t n_probe = 8;
    std::size_t n_buckets = 256;
    double subset_fraction = 1.0;
    std::uint64_t seed = 42;
    /// Validate against the merged two-channel draft (false: cache channel only).
    bool fuzzy_validation = true;
    /// Return the merged draft on acceptance (false: cache channel only).
    bool fuzzy_enhancement = true;
    ScoringMode scoring = ScoringMode::Full;

    /// Throws ConfigError when a field is out of range.
    void validate() const;
};

struct RetrievalOutcome {
    RankedHits docs;
    bool accepted = false;
    std::optional<QueryId> matched_query;
    double match_score = 0.0;  // best homology score seen, accepted or not
    LatencyBreakdown latency;
    std::vector<QueryId> evictions;
    std::uint64_t cloud_rng_draws = 0;
};

/// Speculative retriever: answers from a draft built over the cache channel
/// and the fuzzy IVF channel when a cached query overlaps it by more than tau,
/// otherwise falls back to exact full-corpus search and caches that result.
///
/// retrieve() may be called concurrently. Draft building and scoring share the
/// cache; the fallback insertion takes it exclusively.
class SpeculativeRetriever {
  public:
    /// Builds the fuzzy channel from `corpus`. The corpus must outlive the engine.
    SpeculativeRetriever(const FlatIndex& corpus, EngineConfig config, LatencyConfig latency);
    SpeculativeRetriever(const FlatIndex& corpus, IvfIndex fuzzy, EngineConfig config,
                         LatencyConfig latency);

    /// Two-channel draft for q.
    [[nodiscard]] Draft build_draft(std::span<const float> query) const;

    /// `ordinal` selects the latency sub-streams; use the query's stream position.
    RetrievalOutcome retrieve(QueryId id, const Embedding& query, std::uint64_t ordinal);

    /// Caches the exact result for q without producing an outcome. Used to
    /// pre-fill the cache before a measured stream.
    void warm(QueryId id, const Embedding& query);

    [[nodiscard]] const EngineConfig& config() const noexcept { return config_; }
    [[nodiscard]] const IvfIndex& fuzzy_channel() const noexcept { return fuzzy_; }
    [[nodiscard]] const FlatIndex& corpus() const noexcept { return *corpus_; }
    /// Unsynchronized view; do not use while retrieve() runs on other threads.
    [[nodiscard]] const QueryCache& cache() const noexcept { return cache_; }
    [[nodiscard]] std::size_t cache_memory_bytes() const;

  private:
    struct Channels {
        RankedHits cache_hits;
        RankedHits fuzzy_hits;
        ScanCost cost;
    };
    Channels search_channels(std::span<const float> query, bool need_fuzzy) const;

    const FlatIndex* corpus_;
    EngineConfig config_;
    LatencyModel latency_;
    FullBackend backend_;
    IvfIndex fuzzy_;
    QueryCache cache_;
    mutable std::shared_mutex cache_mutex_;
};

}  // namespace specret
