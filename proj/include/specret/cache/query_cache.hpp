// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "specret/core/embedding.hpp"
#include "specret/core/ids.hpp"
#include "specret/index/flat_index.hpp"
#include "specret/index/ranked_hits.hpp"

namespace specret {

inline constexpr std::size_t kDefaultCacheCapacity = 5000;

/// One cached query with its full-database result.
struct CacheEntry {
    QueryId query_id;
    Embedding query_embedding;
    std::vector<DocId> doc_ids;
    std::uint64_t insert_seq = 0;
};

/// FIFO query cache. Besides the entries it maintains the deduplicated pool of
/// every document referenced by some entry (the cache channel) and the
/// document -> entry inverted index used for homology scoring.
///
/// Entries are identified internally by insert_seq, which is unique even if a
/// query id is inserted twice. Not synchronized: one writer, many readers.
class QueryCache {
  public:
    QueryCache(std::size_t h_max, std::size_t dim);

    /// Appends an entry for (query, docs); evicts from the front while over
    /// capacity. Embeddings of the docs come from `store`. Returns the ids of
    /// evicted entries in eviction order.
    std::vector<QueryId> insert(QueryId query, const Embedding& query_embedding,
                                const RankedHits& docs, const EmbeddingSource& store);

    /// Query ids of the entries whose result contains d, ascending. Empty for unknown d.
    [[nodiscard]] std::vector<QueryId> lookup(DocId d) const;

    /// insert_seq values of the entries whose result contains d, ascending.
    [[nodiscard]] std::span<const std::uint64_t> postings(DocId d) const noexcept;

    [[nodiscard]] const CacheEntry* entry_by_seq(std::uint64_t seq) const noexcept;

    /// Exact top-k over the cache channel document pool.
    [[nodiscard]] RankedHits channel_topk(std::span<const float> query, std::size_t k) const;

    struct NearestQuery {
        const CacheEntry* entry;
        SimScore score;
    };
    /// Highest-similarity cached query (ties to the oldest entry).
    [[nodiscard]] std::optional<NearestQuery> nearest_query(std::span<const float> query) const;

    /// Modeled byte footprint of entries, pool embeddings and postings.
    [[nodiscard]] std::size_t memory_footprint() const noexcept;

    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] std::size_t capacity() const noexcept { return h_max_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t pool_size() const noexcept { return pool_ids_.size(); }
    [[nodiscard]] std::size_t refcount(DocId d) const noexcept;
    [[nodiscard]] const std::deque<CacheEntry>& entries() const noexcept { return entries_; }
    [[nodiscard]] std::span<const DocId> pool_ids() const noexcept { return pool_ids_; }
    [[nodiscard]] std::span<const float> pool_embedding(DocId d) const noexcept;

    /// Recomputes pool membership, refcounts and postings from the entries and
    /// compares with the live state. Returns a description of the first
    /// mismatch, or nullopt when consistent.
    [[nodiscard]] std::optional<std::string> check_integrity() const;

    /// Debug dump: one line per entry in FIFO order,
    /// `query_id<TAB>insert_seq<TAB>doc_id,doc_id,...`.
    void dump(std::ostream& out) const;

  private:
    struct PoolSlot {
        std::size_t slot;
        std::size_t refcount;
    };

    void retain(DocId d, const EmbeddingSource& store);
    void release(DocId d);
    void evict_front(std::vector<QueryId>& evicted);

    std::size_t h_max_;
    std::size_t dim_;
    std::uint64_t next_seq_ = 0;
    std::deque<CacheEntry> entries_;

    std::vector<DocId> pool_ids_;
    std::vector<float> pool_values_;
    std::unordered_map<DocId, PoolSlot> pool_;

    std::unordered_map<DocId, std::vector<std::uint64_t>> inverted_;
    std::size_t n_postings_ = 0;
};

}  // namespace specret
