// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "specret/core/embedding.hpp"
#include "specret/core/ids.hpp"

namespace specret {

struct Hit {
    DocId id;
    SimScore score = 0.0F;

    friend bool operator==(const Hit&, const Hit&) = default;
};

/// Ranking order: higher score first, then ascending DocId.
constexpr bool ranks_before(const Hit& a, const Hit& b) noexcept {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
}

/// Descending-score list of at most k hits with ascending-DocId tie-break.
using RankedHits = std::vector<Hit>;

/// Bounded collector for the k best hits under ranks_before.
class TopK {
  public:
    explicit TopK(std::size_t k) : k_(k) { heap_.reserve(k); }

    void push(Hit h) {
        if (k_ == 0) return;
        if (heap_.size() < k_) {
            heap_.push_back(h);
            std::push_heap(heap_.begin(), heap_.end(), ranks_before);
        } else if (ranks_before(h, heap_.front())) {
            // heap_.front() is the worst retained hit.
            std::pop_heap(heap_.begin(), heap_.end(), ranks_before);
            heap_.back() = h;
            std::push_heap(heap_.begin(), heap_.end(), ranks_before);
        }
    }

    /// Would `h` enter the current top-k?
    [[nodiscard]] bool admits(const Hit& h) const noexcept {
        return heap_.size() < k_ || ranks_before(h, heap_.front());
    }

    [[nodiscard]] RankedHits take() && {
        std::sort_heap(heap_.begin(), heap_.end(), ranks_before);
        return std::move(heap_);
    }

  private:
    std::size_t k_;
    std::vector<Hit> heap_;
};

/// True iff hits is strictly ordered by ranks_before (hence distinct ids).
bool is_well_ranked(const RankedHits& hits) noexcept;

std::vector<DocId> ids_of(const RankedHits& hits);

}  // namespace specret
