// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "specret/index/flat_index.hpp"

#include <cmath>
#include <string>

#include "specret/core/errors.hpp"
#include "specret/core/simd.hpp"

namespace specret {

bool is_well_ranked(const RankedHits& hits) noexcept {
    for (std::size_t i = 1; i < hits.size(); ++i) {
        if (!ranks_before(hits[i - 1], hits[i])) return false;
    }
    return true;
}

std::vector<DocId> ids_of(const RankedHits& hits) {
    std::vector<DocId> out;
    out.reserve(hits.size());
    for (const auto& h : hits) out.push_back(h.id);
    return out;
}

void check_query(std::span<const float> query, std::size_t dim) {
    if (query.size() != dim) {
        throw DimError("query dim " + std::to_string(query.size()) + " != index dim " +
                       std::to_string(dim));
    }
    const double n = std::sqrt(simd::dot(query.data(), query.data(), query.size()));
    if (std::abs(n - 1.0) > kUnitNormTolerance) {
        throw DataError("query embedding is not unit norm");
    }
}

void scan_into(TopK& top, std::span<const float> query, std::span<const DocId> ids,
               std::span<const float> rows, std::size_t dim) {
    constexpr std::size_t kBlock = 256;
    float scores[kBlock];
    for (std::size_t base = 0; base < ids.size(); base += kBlock) {
        const std::size_t n = std::min(kBlock, ids.size() - base);
        simd::dot_rows(query.data(), rows.data() + base * dim, n, dim, scores);
        for (std::size_t i = 0; i < n; ++i) {
            top.push(Hit{ids[base + i], scores[i]});
        }
    }
}

RankedHits scan_topk(std::span<const float> query, std::span<const DocId> ids,
                     std::span<const float> rows, std::size_t dim, std::size_t k) {
    TopK top(k);
    scan_into(top, query, ids, rows, dim);
    return std::move(top).take();
}

FlatIndex::FlatIndex(std::size_t dim) : dim_(dim) {
    if (dim == 0) {
        throw DimError("index dimension must be positive");
    }
}

void FlatIndex::reserve(std::size_t n) {
    ids_.reserve(n);
    values_.reserve(n * dim_);
    rows_.reserve(n);
}

void FlatIndex::add(DocId id, std::span<const float> embedding) {
    if (embedding.size() != dim_) {
        throw DimError("document dim " + std::to_string(embedding.size()) + " != index dim " +
                       std::to_string(dim_));
    }
    check_finite(embedding);
    const double n = std::sqrt(simd::dot(embedding.data(), embedding.data(), dim_));
    if (std::abs(n - 1.0) > kUnitNormTolerance) {
        throw DataError("document " + std::to_string(id.value) + " is not unit norm");
    }
    if (!rows_.emplace(id, ids_.size()).second) {
        throw BuildError("duplicate document id " + std::to_string(id.value));
    }
    ids_.push_back(id);
    values_.insert(values_.end(), embedding.begin(), embedding.end());
}

RankedHits FlatIndex::topk(std::span<const float> query, std::size_t k) const {
    if (k == 0) {
        throw ConfigError("k must be at least 1");
    }
    check_query(query, dim_);
    return scan_topk(query, ids_, values_, dim_, k);
}

std::span<const float> FlatIndex::find(DocId id) const noexcept {
    const auto it = rows_.find(id);
    if (it == rows_.end()) return {};
    return row(it->second);
}

}  // namespace specret
