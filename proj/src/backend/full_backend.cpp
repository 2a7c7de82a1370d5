// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "specret/backend/full_backend.hpp"

#include <chrono>

#include "specret/core/errors.hpp"

namespace specret {

const FlatIndex& FullBackend::corpus() const {
    if (!ready()) {
        throw NotReadyError("full-database backend has no corpus loaded");
    }
    return *corpus_;
}

FullResult FullBackend::retrieve(std::span<const float> query, std::size_t k,
                                 std::uint64_t ordinal) const {
    const FlatIndex& index = corpus();
    const auto start = std::chrono::steady_clock::now();
    FullResult result;
    result.hits = index.topk(query, k);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    RngStream rng = latency_->stream(Stage::Cloud, ordinal);
    const ScanCost cost{index.size(), index.dim(), elapsed.count()};
    result.cloud_seconds = latency_->sample(Stage::Cloud, rng, cost);
    result.rng_draws = rng.draws();
    latency_->charge(result.cloud_seconds);
    return result;
}

}  // namespace specret
