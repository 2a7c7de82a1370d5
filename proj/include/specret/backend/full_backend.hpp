// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "specret/backend/latency.hpp"
#include "specret/index/flat_index.hpp"
#include "specret/index/ranked_hits.hpp"

namespace specret {

struct FullResult {
    RankedHits hits;
    double cloud_seconds = 0.0;
    std::uint64_t rng_draws = 0;
};

/// Exact retrieval over the whole corpus, charged as a cloud round trip.
class FullBackend {
  public:
    FullBackend(const FlatIndex* corpus, const LatencyModel& latency)
        : corpus_(corpus), latency_(&latency) {}

    /// Throws NotReadyError if no corpus is loaded.
    [[nodiscard]] FullResult retrieve(std::span<const float> query, std::size_t k,
                                      std::uint64_t ordinal) const;

    [[nodiscard]] bool ready() const noexcept { return corpus_ != nullptr && !corpus_->empty(); }
    [[nodiscard]] const FlatIndex& corpus() const;

  private:
    const FlatIndex* corpus_;
    const LatencyModel* latency_;
};

}  // namespace specret
