// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "specret/index/snapshot.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "specret/core/binary_io.hpp"
#include "specret/core/errors.hpp"

namespace specret {

namespace {

constexpr char kMagic[4] = {'H', 'S', 'I', 'X'};

void put_header(std::ostream& out, IndexKind kind) {
    out.write(kMagic, 4);
    binio::put_le<std::uint32_t>(out, kSnapshotVersion);
    binio::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(kind));
}

void expect_kind(std::istream& in, IndexKind want) {
    const IndexKind got = peek_snapshot_kind(in);
    if (got != want) {
        throw DataError("snapshot holds index kind " +
                        std::to_string(static_cast<std::uint32_t>(got)) + ", expected " +
                        std::to_string(static_cast<std::uint32_t>(want)));
    }
}

void put_ids(std::ostream& out, std::span<const DocId> ids) {
    for (DocId id : ids) binio::put_le<std::uint64_t>(out, id.value);
}

std::vector<DocId> get_ids(std::istream& in, std::uint64_t n) {
    std::vector<DocId> ids;
    ids.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) ids.emplace_back(binio::get_le<std::uint64_t>(in));
    return ids;
}

std::uint64_t get_count(std::istream& in, std::uint64_t limit, const char* what) {
    const auto n = binio::get_le<std::uint64_t>(in);
    if (n > limit) {
        throw DataError(std::string("implausible ") + what + " in snapshot");
    }
    return n;
}

constexpr std::uint64_t kMaxCount = std::uint64_t{1} << 40;
constexpr std::uint64_t kMaxDim = std::uint64_t{1} << 20;

}  // namespace

IndexKind peek_snapshot_kind(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::string_view(magic, 4) != std::string_view(kMagic, 4)) {
        throw DataError("not an HSIX snapshot (bad magic)");
    }
    const auto version = binio::get_le<std::uint32_t>(in);
    if (version != kSnapshotVersion) {
        throw DataError("unsupported HSIX version " + std::to_string(version));
    }
    const auto tag = binio::get_le<std::uint32_t>(in);
    if (tag != static_cast<std::uint32_t>(IndexKind::Flat) &&
        tag != static_cast<std::uint32_t>(IndexKind::Ivf)) {
        throw DataError("unknown index kind tag " + std::to_string(tag));
    }
    return static_cast<IndexKind>(tag);
}

void save_snapshot(std::ostream& out, const FlatIndex& index) {
    put_header(out, IndexKind::Flat);
    binio::put_le<std::uint64_t>(out, index.dim());
    binio::put_le<std::uint64_t>(out, index.size());
    put_ids(out, index.ids());
    binio::put_f32_array(out, index.values());
    if (!out) throw IoError("failed writing flat snapshot");
}

void save_snapshot(std::ostream& out, const IvfIndex& index) {
    put_header(out, IndexKind::Ivf);
    binio::put_le<std::uint64_t>(out, index.dim());
    binio::put_le<std::uint64_t>(out, index.n_buckets());
    binio::put_le<std::uint64_t>(out, index.build_seed());
    binio::put_f64(out, index.subset_fraction());
    binio::put_f32_array(out, index.centroids());
    for (std::size_t b = 0; b < index.n_buckets(); ++b) {
        const auto& bucket = index.bucket(b);
        binio::put_le<std::uint64_t>(out, bucket.ids.size());
        put_ids(out, bucket.ids);
        binio::put_f32_array(out, bucket.values);
    }
    if (!out) throw IoError("failed writing IVF snapshot");
}

FlatIndex load_flat_snapshot(std::istream& in) {
    expect_kind(in, IndexKind::Flat);
    const auto dim = get_count(in, kMaxDim, "dim");
    const auto n = get_count(in, kMaxCount, "document count");
    if (dim == 0) throw DataError("snapshot dim must be positive");
    const auto ids = get_ids(in, n);
    std::vector<float> values(n * dim);
    binio::get_f32_array(in, values);
    FlatIndex index(dim);
    index.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        index.add(ids[i], std::span<const float>(values.data() + i * dim, dim));
    }
    return index;
}

IvfIndex load_ivf_snapshot(std::istream& in) {
    expect_kind(in, IndexKind::Ivf);
    const auto dim = get_count(in, kMaxDim, "dim");
    const auto nb = get_count(in, kMaxCount, "bucket count");
    const auto seed = binio::get_le<std::uint64_t>(in);
    const double fraction = binio::get_f64(in);
    if (dim == 0 || nb == 0) throw DataError("snapshot dim and bucket count must be positive");
    std::vector<float> centroids(nb * dim);
    binio::get_f32_array(in, centroids);
    std::vector<IvfIndex::Bucket> buckets(nb);
    for (auto& bucket : buckets) {
        const auto n = get_count(in, kMaxCount, "bucket size");
        bucket.ids = get_ids(in, n);
        bucket.values.resize(n * dim);
        binio::get_f32_array(in, bucket.values);
        check_finite(bucket.values);
    }
    check_finite(centroids);
    return IvfIndex::from_parts(dim, std::move(centroids), std::move(buckets), seed, fraction);
}

}  // namespace specret
