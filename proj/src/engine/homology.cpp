// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "specret/engine/homology.hpp"

#include <algorithm>
#include <unordered_map>

namespace specret {

Draft merge_draft(const RankedHits& cache_hits, const RankedHits& fuzzy_hits, std::size_t k) {
    std::unordered_map<DocId, std::size_t> where;
    RankedHits pool;
    std::vector<Provenance> prov;
    pool.reserve(cache_hits.size() + fuzzy_hits.size());
    for (const auto& h : cache_hits) {
        where.emplace(h.id, pool.size());
        pool.push_back(h);
        prov.push_back(Provenance::Cache);
    }
    for (const auto& h : fuzzy_hits) {
        const auto it = where.find(h.id);
        if (it != where.end()) {
            prov[it->second] = Provenance::Both;
            continue;
        }
        where.emplace(h.id, pool.size());
        pool.push_back(h);
        prov.push_back(Provenance::Fuzzy);
    }

    std::vector<std::size_t> order(pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ranks_before(pool[a], pool[b]); });
    order.resize(std::min(order.size(), k));

    Draft draft;
    draft.hits.reserve(order.size());
    draft.provenance.reserve(order.size());
    for (std::size_t i : order) {
        draft.hits.push_back(pool[i]);
        draft.provenance.push_back(prov[i]);
    }
    return draft;
}

const HomologyScore* HomologyScoreTable::best() const noexcept {
    const HomologyScore* best = nullptr;
    for (const auto& row : rows) {
        if (best == nullptr || row.frequency > best->frequency ||
            (row.frequency == best->frequency &&
             (row.query < best->query ||
              (row.query == best->query && row.entry_seq < best->entry_seq)))) {
            best = &row;
        }
    }
    return best;
}

const HomologyScore* HomologyScoreTable::find(std::uint64_t entry_seq) const noexcept {
    const auto it = std::lower_bound(
        rows.begin(), rows.end(), entry_seq,
        [](const HomologyScore& r, std::uint64_t seq) { return r.entry_seq < seq; });
    if (it == rows.end() || it->entry_seq != entry_seq) return nullptr;
    return &*it;
}

HomologyScoreTable score_homology(const RankedHits& draft, const QueryCache& cache, std::size_t k) {
    std::unordered_map<std::uint64_t, std::uint32_t> freq;
    for (const auto& h : draft) {
        for (std::uint64_t seq : cache.postings(h.id)) {
            ++freq[seq];
        }
    }
    HomologyScoreTable table;
    table.k = k;
    table.rows.reserve(freq.size());
    for (const auto& [seq, f] : freq) {
        const CacheEntry* e = cache.entry_by_seq(seq);
        table.rows.push_back(HomologyScore{e->query_id, seq, f,
                                           static_cast<double>(f) / static_cast<double>(k)});
    }
    std::sort(table.rows.begin(), table.rows.end(),
              [](const HomologyScore& a, const HomologyScore& b) { return a.entry_seq < b.entry_seq; });
    return table;
}

ValidationResult validate(HomologyScoreTable table, double tau) {
    ValidationResult result;
    if (const HomologyScore* best = table.best()) {
        result.score = best->score;
        if (best->score > tau) {
            result.accepted = true;
            result.matched_query = best->query;
            result.matched_seq = best->entry_seq;
        }
    }
    result.table = std::move(table);
    return result;
}

ValidationResult validate_early_exit(const RankedHits& draft, const QueryCache& cache,
                                     std::size_t k, double tau) {
    ValidationResult result;
    result.table.k = k;
    std::unordered_map<std::uint64_t, std::uint32_t> freq;
    for (const auto& h : draft) {
        for (std::uint64_t seq : cache.postings(h.id)) {
            const std::uint32_t f = ++freq[seq];
            if (static_cast<double>(f) / static_cast<double>(k) > tau) {
                const CacheEntry* e = cache.entry_by_seq(seq);
                result.accepted = true;
                result.matched_query = e->query_id;
                result.matched_seq = seq;
                result.score = static_cast<double>(f) / static_cast<double>(k);
                result.table.rows.push_back(HomologyScore{e->query_id, seq, f, result.score});
                return result;
            }
        }
    }
    for (const auto& [seq, f] : freq) {
        const double s = static_cast<double>(f) / static_cast<double>(k);
        result.score = std::max(result.score, s);
        result.table.rows.push_back(HomologyScore{cache.entry_by_seq(seq)->query_id, seq, f, s});
    }
    std::sort(result.table.rows.begin(), result.table.rows.end(),
              [](const HomologyScore& a, const HomologyScore& b) { return a.entry_seq < b.entry_seq; });
    return result;
}

}  // namespace specret
