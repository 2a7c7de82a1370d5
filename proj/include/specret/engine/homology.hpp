// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "specret/cache/query_cache.hpp"
#include "specret/core/ids.hpp"
#include "specret/index/ranked_hits.hpp"

namespace specret {

enum class Provenance : std::uint8_t { Cache = 1, Fuzzy = 2, Both = 3 };

/// Candidate result assembled from the two fast channels.
struct Draft {
    RankedHits hits;
    std::vector<Provenance> provenance;  // parallel to hits
};

/// Deduplicates the two channel results by id, ranks the union and keeps k.
Draft merge_draft(const RankedHits& cache_hits, const RankedHits& fuzzy_hits, std::size_t k);

struct HomologyScore {
    QueryId query;
    std::uint64_t entry_seq = 0;
    std::uint32_t frequency = 0;  // |draft ∩ cached result|
    double score = 0.0;           // frequency / k
};

/// Per cached entry overlap with a draft. Only entries with frequency >= 1
/// appear; rows are ordered by entry_seq.
struct HomologyScoreTable {
    std::size_t k = 0;
    std::vector<HomologyScore> rows;

    /// Highest score; ties go to the lowest query id, then the oldest entry.
    [[nodiscard]] const HomologyScore* best() const noexcept;
    [[nodiscard]] const HomologyScore* find(std::uint64_t entry_seq) const noexcept;
};

/// Counts, for every cached entry, how many draft documents its result lists.
/// The score divides by the configured k, not by the draft length.
HomologyScoreTable score_homology(const RankedHits& draft, const QueryCache& cache, std::size_t k);

struct ValidationResult {
    bool accepted = false;
    std::optional<QueryId> matched_query;
    std::uint64_t matched_seq = 0;
    double score = 0.0;  // best score, 0 for an empty table
    HomologyScoreTable table;
};

/// Accepts iff the best score is strictly greater than tau.
ValidationResult validate(HomologyScoreTable table, double tau);

/// Early-exit variant: stops at the first entry whose running count exceeds
/// tau * k while walking the draft. Same decision as validate(score_homology(...)),
/// possibly a different matched entry; the returned table is partial.
ValidationResult validate_early_exit(const RankedHits& draft, const QueryCache& cache,
                                     std::size_t k, double tau);

}  // namespace specret
