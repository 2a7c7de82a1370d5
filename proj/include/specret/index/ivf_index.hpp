// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "specret/index/flat_index.hpp"
#include "specret/index/ranked_hits.hpp"

namespace specret {

struct IvfBuildParams {
    std::size_t n_buckets = 256;
    double subset_fraction = 1.0;
    std::uint64_t seed = 42;
    std::size_t lloyd_iterations = 10;
};

/// Inverted-file index: spherical k-means coarse quantizer with exact
/// scanning inside the probed buckets.
class IvfIndex {
  public:
    struct Bucket {
        std::vector<DocId> ids;
        std::vector<float> values;  // row-major, ids.size() * dim
    };

    /// Loads ceil(subset_fraction * corpus.size()) documents, chosen as the
    /// prefix of a seeded shuffle of the corpus ids in ascending order.
    /// Throws BuildError on bad parameters or n_buckets > loaded docs.
    static IvfIndex build(const FlatIndex& corpus, const IvfBuildParams& params);

    /// Exact top-k over the union of the n_probe buckets whose centroids score
    /// highest against q (ties to the lower bucket number).
    [[nodiscard]] RankedHits topk(std::span<const float> query, std::size_t k,
                                  std::size_t n_probe) const;

    /// Bucket numbers in probe order.
    [[nodiscard]] std::vector<std::size_t> probe_order(std::span<const float> query,
                                                       std::size_t n_probe) const;

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t n_buckets() const noexcept { return buckets_.size(); }
    [[nodiscard]] std::size_t size() const noexcept { return n_loaded_; }
    [[nodiscard]] std::uint64_t build_seed() const noexcept { return build_seed_; }
    [[nodiscard]] double subset_fraction() const noexcept { return subset_fraction_; }
    [[nodiscard]] std::span<const float> centroid(std::size_t b) const noexcept {
        return {centroids_.data() + b * dim_, dim_};
    }
    [[nodiscard]] const Bucket& bucket(std::size_t b) const noexcept { return buckets_[b]; }
    [[nodiscard]] std::span<const float> centroids() const noexcept { return centroids_; }

    /// Reassembles an index from its parts (snapshot loading).
    static IvfIndex from_parts(std::size_t dim, std::vector<float> centroids,
                               std::vector<Bucket> buckets, std::uint64_t build_seed,
                               double subset_fraction);

  private:
    std::size_t dim_ = 0;
    std::vector<float> centroids_;
    std::vector<Bucket> buckets_;
    std::size_t n_loaded_ = 0;
    std::uint64_t build_seed_ = 0;
    double subset_fraction_ = 1.0;
};

/// Number of docs loaded for a given corpus size and fraction.
std::size_t subset_size(std::size_t corpus_size, double subset_fraction);

}  // namespace specret
