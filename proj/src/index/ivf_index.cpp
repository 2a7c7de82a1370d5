// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "specret/index/ivf_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "specret/core/errors.hpp"
#include "specret/core/rng.hpp"
#include "specret/core/simd.hpp"

namespace specret {

namespace {

// Nearest centroid by inner product; ties go to the lower bucket number.
std::size_t nearest_centroid(const float* v, const std::vector<float>& centroids,
                             std::size_t n_buckets, std::size_t dim, std::vector<float>& scratch) {
    scratch.resize(n_buckets);
    simd::dot_rows(v, centroids.data(), n_buckets, dim, scratch.data());
    std::size_t best = 0;
    for (std::size_t b = 1; b < n_buckets; ++b) {
        if (scratch[b] > scratch[best]) best = b;
    }
    return best;
}

// k-means++ seeding on unit vectors: squared L2 distance is 2 - 2<x, c>.
std::vector<float> seed_centroids(const std::vector<const float*>& points, std::size_t n_buckets,
                                  std::size_t dim, RngStream& rng) {
    const std::size_t m = points.size();
    std::vector<float> centroids;
    centroids.reserve(n_buckets * dim);
    std::vector<double> d2(m, 4.0);
    std::vector<bool> chosen(m, false);

    auto add_center = [&](std::size_t idx) {
        chosen[idx] = true;
        centroids.insert(centroids.end(), points[idx], points[idx] + dim);
        const float* c = points[idx];
        for (std::size_t i = 0; i < m; ++i) {
            const double dist = std::max(0.0, 2.0 - 2.0 * simd::dot(points[i], c, dim));
            d2[i] = std::min(d2[i], dist);
        }
    };

    add_center(static_cast<std::size_t>(rng.below(m)));
    while (centroids.size() < n_buckets * dim) {
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!chosen[i]) total += d2[i];
        }
        std::size_t pick = m;
        if (total > 0.0) {
            double target = rng.uniform() * total;
            for (std::size_t i = 0; i < m; ++i) {
                if (chosen[i]) continue;
                pick = i;
                target -= d2[i];
                if (target < 0.0) break;
            }
        } else {
            // Remaining points coincide with centers; take any unchosen one.
            std::uint64_t nth = rng.below(m - centroids.size() / dim);
            for (std::size_t i = 0; i < m; ++i) {
                if (chosen[i]) continue;
                if (nth-- == 0) {
                    pick = i;
                    break;
                }
            }
        }
        add_center(pick);
    }
    return centroids;
}

}  // namespace

std::size_t subset_size(std::size_t corpus_size, double subset_fraction) {
    // The epsilon absorbs representation error, e.g. 0.07 * 100.
    const double raw = subset_fraction * static_cast<double>(corpus_size);
    const auto n = static_cast<std::size_t>(std::ceil(raw - 1e-9));
    return std::min(n, corpus_size);
}

IvfIndex IvfIndex::build(const FlatIndex& corpus, const IvfBuildParams& params) {
    if (params.n_buckets == 0) {
        throw BuildError("n_buckets must be at least 1");
    }
    if (!(params.subset_fraction > 0.0 && params.subset_fraction <= 1.0)) {
        throw BuildError("subset_fraction must lie in (0, 1]");
    }
    const std::size_t dim = corpus.dim();

    std::vector<std::size_t> order(corpus.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto ids = corpus.ids();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });

    RngStream rng(params.seed);
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.below(i)]);
    }
    const std::size_t m = subset_size(corpus.size(), params.subset_fraction);
    order.resize(m);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });

    if (params.n_buckets > m) {
        throw BuildError("n_buckets (" + std::to_string(params.n_buckets) +
                         ") exceeds loaded documents (" + std::to_string(m) + ")");
    }

    std::vector<const float*> points(m);
    for (std::size_t i = 0; i < m; ++i) points[i] = corpus.row(order[i]).data();

    const std::size_t nb = params.n_buckets;
    std::vector<float> centroids = seed_centroids(points, nb, dim, rng);
    std::vector<std::size_t> assign(m, 0);
    std::vector<float> scratch;
    std::vector<double> sums(nb * dim);
    std::vector<std::size_t> counts(nb);

    for (std::size_t iter = 0; iter < params.lloyd_iterations; ++iter) {
        for (std::size_t i = 0; i < m; ++i) {
            assign[i] = nearest_centroid(points[i], centroids, nb, dim, scratch);
        }
        std::fill(sums.begin(), sums.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < m; ++i) {
            double* s = sums.data() + assign[i] * dim;
            for (std::size_t d = 0; d < dim; ++d) s[d] += points[i][d];
            ++counts[assign[i]];
        }
        for (std::size_t b = 0; b < nb; ++b) {
            if (counts[b] == 0) continue;  // empty bucket keeps its centroid
            const double* s = sums.data() + b * dim;
            double sq = 0.0;
            for (std::size_t d = 0; d < dim; ++d) sq += s[d] * s[d];
            const double norm = std::sqrt(sq);
            if (!(norm > 1e-12)) continue;
            for (std::size_t d = 0; d < dim; ++d) {
                centroids[b * dim + d] = static_cast<float>(s[d] / norm);
            }
        }
    }

    IvfIndex index;
    index.dim_ = dim;
    index.build_seed_ = params.seed;
    index.subset_fraction_ = params.subset_fraction;
    index.n_loaded_ = m;
    index.buckets_.resize(nb);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t b = nearest_centroid(points[i], centroids, nb, dim, scratch);
        index.buckets_[b].ids.push_back(ids[order[i]]);
        index.buckets_[b].values.insert(index.buckets_[b].values.end(), points[i], points[i] + dim);
    }
    index.centroids_ = std::move(centroids);
    return index;
}

IvfIndex IvfIndex::from_parts(std::size_t dim, std::vector<float> centroids,
                              std::vector<Bucket> buckets, std::uint64_t build_seed,
                              double subset_fraction) {
    if (dim == 0 || buckets.empty() || centroids.size() != buckets.size() * dim) {
        throw DataError("inconsistent IVF parts");
    }
    IvfIndex index;
    index.dim_ = dim;
    index.centroids_ = std::move(centroids);
    index.build_seed_ = build_seed;
    index.subset_fraction_ = subset_fraction;
    for (const auto& b : buckets) {
        if (b.values.size() != b.ids.size() * dim) {
            throw DataError("IVF bucket size does not match its ids");
        }
        index.n_loaded_ += b.ids.size();
    }
    index.buckets_ = std::move(buckets);
    return index;
}

std::vector<std::size_t> IvfIndex::probe_order(std::span<const float> query,
                                               std::size_t n_probe) const {
    const std::size_t nb = buckets_.size();
    if (n_probe == 0 || n_probe > nb) {
        throw ConfigError("n_probe must lie in [1, n_buckets]");
    }
    check_query(query, dim_);
    std::vector<float> scores(nb);
    simd::dot_rows(query.data(), centroids_.data(), nb, dim_, scores.data());
    std::vector<std::size_t> order(nb);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_probe),
                      order.end(), [&](std::size_t a, std::size_t b) {
                          if (scores[a] != scores[b]) return scores[a] > scores[b];
                          return a < b;
                      });
    order.resize(n_probe);
    return order;
}

RankedHits IvfIndex::topk(std::span<const float> query, std::size_t k, std::size_t n_probe) const {
    if (k == 0) {
        throw ConfigError("k must be at least 1");
    }
    TopK top(k);
    for (std::size_t b : probe_order(query, n_probe)) {
        const Bucket& bucket = buckets_[b];
        scan_into(top, query, bucket.ids, bucket.values, dim_);
    }
    return std::move(top).take();
}

}  // namespace specret
