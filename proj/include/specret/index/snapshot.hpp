// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "specret/index/flat_index.hpp"
#include "specret/index/ivf_index.hpp"

// Index snapshots: "HSIX", u32 version, u32 kind tag, then the index fields
// in declaration order. All integers and floats little-endian.
//
//   flat: u64 dim, u64 n, n x (u64 doc id), n*dim f32
//   ivf:  u64 dim, u64 n_buckets, u64 build_seed, f64 subset_fraction,
//         n_buckets*dim f32 centroids, then per bucket:
//         u64 n, n x (u64 doc id), n*dim f32

namespace specret {

enum class IndexKind : std::uint32_t { Flat = 1, Ivf = 2 };

inline constexpr std::uint32_t kSnapshotVersion = 1;

void save_snapshot(std::ostream& out, const FlatIndex& index);
void save_snapshot(std::ostream& out, const IvfIndex& index);
FlatIndex load_flat_snapshot(std::istream& in);
IvfIndex load_ivf_snapshot(std::istream& in);

/// Reads the header only and returns the kind tag. Throws DataError if invalid.
IndexKind peek_snapshot_kind(std::istream& in);

}  // namespace specret
