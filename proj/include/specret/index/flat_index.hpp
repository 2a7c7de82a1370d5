// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

#include "specret/core/embedding.hpp"
#include "specret/core/ids.hpp"
#include "specret/index/ranked_hits.hpp"

namespace specret {

/// Read access to stored document vectors by id.
class EmbeddingSource {
  public:
    virtual ~EmbeddingSource() = default;
    [[nodiscard]] virtual std::size_t dim() const noexcept = 0;
    /// Empty span if the id is unknown.
    [[nodiscard]] virtual std::span<const float> find(DocId id) const noexcept = 0;
};

/// Exact inner-product search over a contiguous row-major store.
class FlatIndex final : public EmbeddingSource {
  public:
    explicit FlatIndex(std::size_t dim);

    /// Throws DimError on wrong dim, DataError if not unit norm,
    /// BuildError on a duplicate id.
    void add(DocId id, std::span<const float> embedding);
    void reserve(std::size_t n);

    [[nodiscard]] RankedHits topk(std::span<const float> query, std::size_t k) const;
    [[nodiscard]] RankedHits topk(const Embedding& query, std::size_t k) const {
        return topk(query.values(), k);
    }

    [[nodiscard]] std::size_t dim() const noexcept override { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
    [[nodiscard]] bool empty() const noexcept { return ids_.empty(); }
    [[nodiscard]] std::span<const float> find(DocId id) const noexcept override;
    [[nodiscard]] bool contains(DocId id) const noexcept { return rows_.contains(id); }

    [[nodiscard]] std::span<const DocId> ids() const noexcept { return ids_; }
    [[nodiscard]] std::span<const float> row(std::size_t i) const noexcept {
        return {values_.data() + i * dim_, dim_};
    }
    [[nodiscard]] std::span<const float> values() const noexcept { return values_; }

  private:
    std::size_t dim_;
    std::vector<DocId> ids_;
    std::vector<float> values_;
    std::unordered_map<DocId, std::size_t> rows_;
};

/// Scores every row of a row-major block against `query` into `top`.
void scan_into(TopK& top, std::span<const float> query, std::span<const DocId> ids,
               std::span<const float> rows, std::size_t dim);

/// Exact top-k of `query` over a row-major block.
RankedHits scan_topk(std::span<const float> query, std::span<const DocId> ids,
                     std::span<const float> rows, std::size_t dim, std::size_t k);

/// Throws DimError unless query.size() == dim, DataError unless unit norm.
void check_query(std::span<const float> query, std::size_t dim);

}  // namespace specret
