// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "specret/cache/query_cache.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <unordered_set>

#include "specret/core/errors.hpp"
#include "specret/core/simd.hpp"

namespace specret {

namespace {

// Footprint model, in bytes.
constexpr std::size_t kBaseBytes = 256;
constexpr std::size_t kEntryHeaderBytes = 32;  // query id, seq, list header
constexpr std::size_t kIdBytes = 8;
constexpr std::size_t kPoolSlotBytes = 24;     // id, slot, refcount
constexpr std::size_t kPostingListBytes = 32;  // key + vector header

}  // namespace

QueryCache::QueryCache(std::size_t h_max, std::size_t dim) : h_max_(h_max), dim_(dim) {
    if (h_max == 0) {
        throw ConfigError("cache capacity must be at least 1");
    }
    if (dim == 0) {
        throw DimError("cache dimension must be positive");
    }
}

std::vector<QueryId> QueryCache::insert(QueryId query, const Embedding& query_embedding,
                                        const RankedHits& docs, const EmbeddingSource& store) {
    if (docs.empty()) {
        throw DataError("cannot cache an empty result");
    }
    if (query_embedding.dim() != dim_ || store.dim() != dim_) {
        throw DimError("cache insert dimension mismatch");
    }
    std::unordered_set<DocId> seen;
    for (const auto& h : docs) {
        if (!seen.insert(h.id).second) {
            throw DataError("cached result lists document " + std::to_string(h.id.value) + " twice");
        }
        if (!pool_.contains(h.id) && store.find(h.id).empty()) {
            throw DataError("no embedding for document " + std::to_string(h.id.value));
        }
    }

    CacheEntry entry{query, query_embedding, ids_of(docs), next_seq_++};
    for (DocId d : entry.doc_ids) {
        retain(d, store);
        inverted_[d].push_back(entry.insert_seq);
        ++n_postings_;
    }
    entries_.push_back(std::move(entry));

    std::vector<QueryId> evicted;
    while (entries_.size() > h_max_) {
        evict_front(evicted);
    }
    return evicted;
}

void QueryCache::retain(DocId d, const EmbeddingSource& store) {
    auto [it, inserted] = pool_.try_emplace(d, PoolSlot{pool_ids_.size(), 0});
    if (inserted) {
        const auto v = store.find(d);
        pool_ids_.push_back(d);
        pool_values_.insert(pool_values_.end(), v.begin(), v.end());
    }
    ++it->second.refcount;
}

void QueryCache::release(DocId d) {
    auto it = pool_.find(d);
    if (--it->second.refcount > 0) return;
    // Move the last pool row into the freed slot to keep the block dense.
    const std::size_t slot = it->second.slot;
    const std::size_t last = pool_ids_.size() - 1;
    if (slot != last) {
        const DocId moved = pool_ids_[last];
        pool_ids_[slot] = moved;
        std::copy_n(pool_values_.begin() + static_cast<std::ptrdiff_t>(last * dim_), dim_,
                    pool_values_.begin() + static_cast<std::ptrdiff_t>(slot * dim_));
        pool_.at(moved).slot = slot;
    }
    pool_ids_.pop_back();
    pool_values_.resize(pool_ids_.size() * dim_);
    pool_.erase(it);
}

void QueryCache::evict_front(std::vector<QueryId>& evicted) {
    const CacheEntry& victim = entries_.front();
    for (DocId d : victim.doc_ids) {
        auto it = inverted_.find(d);
        auto& list = it->second;
        // The oldest entry always holds the smallest seq in each posting list.
        list.erase(list.begin());
        --n_postings_;
        if (list.empty()) inverted_.erase(it);
        release(d);
    }
    evicted.push_back(victim.query_id);
    entries_.pop_front();
}

std::span<const std::uint64_t> QueryCache::postings(DocId d) const noexcept {
    const auto it = inverted_.find(d);
    if (it == inverted_.end()) return {};
    return it->second;
}

std::vector<QueryId> QueryCache::lookup(DocId d) const {
    std::vector<QueryId> out;
    for (std::uint64_t seq : postings(d)) {
        out.push_back(entry_by_seq(seq)->query_id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

const CacheEntry* QueryCache::entry_by_seq(std::uint64_t seq) const noexcept {
    if (entries_.empty()) return nullptr;
    const std::uint64_t front = entries_.front().insert_seq;
    if (seq < front || seq - front >= entries_.size()) return nullptr;
    return &entries_[static_cast<std::size_t>(seq - front)];
}

std::size_t QueryCache::refcount(DocId d) const noexcept {
    const auto it = pool_.find(d);
    return it == pool_.end() ? 0 : it->second.refcount;
}

std::span<const float> QueryCache::pool_embedding(DocId d) const noexcept {
    const auto it = pool_.find(d);
    if (it == pool_.end()) return {};
    return {pool_values_.data() + it->second.slot * dim_, dim_};
}

RankedHits QueryCache::channel_topk(std::span<const float> query, std::size_t k) const {
    if (k == 0) {
        throw ConfigError("k must be at least 1");
    }
    if (pool_ids_.empty()) return {};
    check_query(query, dim_);
    return scan_topk(query, pool_ids_, pool_values_, dim_, k);
}

std::optional<QueryCache::NearestQuery> QueryCache::nearest_query(std::span<const float> query) const {
    if (query.size() != dim_) {
        throw DimError("query dimension mismatch");
    }
    std::optional<NearestQuery> best;
    for (const auto& e : entries_) {
        const auto s = static_cast<SimScore>(simd::dot(query.data(), e.query_embedding.data(), dim_));
        if (!best || s > best->score) best = NearestQuery{&e, s};
    }
    return best;
}

std::size_t QueryCache::memory_footprint() const noexcept {
    std::size_t bytes = kBaseBytes;
    for (const auto& e : entries_) {
        bytes += kEntryHeaderBytes + dim_ * sizeof(float) + e.doc_ids.size() * kIdBytes;
    }
    bytes += pool_ids_.size() * (kPoolSlotBytes + dim_ * sizeof(float));
    bytes += inverted_.size() * kPostingListBytes + n_postings_ * kIdBytes;
    return bytes;
}

std::optional<std::string> QueryCache::check_integrity() const {
    if (entries_.size() > h_max_) {
        return "entry count exceeds capacity";
    }
    std::map<DocId, std::vector<std::uint64_t>> expected;
    for (const auto& e : entries_) {
        for (DocId d : e.doc_ids) expected[d].push_back(e.insert_seq);
    }
    if (expected.size() != pool_.size() || expected.size() != pool_ids_.size()) {
        return "pool size " + std::to_string(pool_.size()) + " != referenced docs " +
               std::to_string(expected.size());
    }
    if (expected.size() != inverted_.size()) {
        return "posting list count mismatch";
    }
    std::size_t total = 0;
    for (const auto& [d, seqs] : expected) {
        const auto it = pool_.find(d);
        if (it == pool_.end()) return "doc " + std::to_string(d.value) + " missing from pool";
        if (it->second.refcount != seqs.size()) {
            return "refcount mismatch for doc " + std::to_string(d.value);
        }
        if (pool_ids_[it->second.slot] != d) return "pool slot mismatch for doc " + std::to_string(d.value);
        const auto live = postings(d);
        if (!std::equal(live.begin(), live.end(), seqs.begin(), seqs.end())) {
            return "postings mismatch for doc " + std::to_string(d.value);
        }
        total += seqs.size();
    }
    if (total != n_postings_) return "posting count mismatch";
    return std::nullopt;
}

void QueryCache::dump(std::ostream& out) const {
    for (const auto& e : entries_) {
        out << e.query_id.value << '\t' << e.insert_seq << '\t';
        for (std::size_t i = 0; i < e.doc_ids.size(); ++i) {
            if (i > 0) out << ',';
            out << e.doc_ids[i].value;
        }
        out << '\n';
    }
}

}  // namespace specret
