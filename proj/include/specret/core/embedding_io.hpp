// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace specret {

/// Row-major block of `count` embeddings of `dim` floats.
struct EmbeddingMatrix {
    std::uint32_t dim = 0;
    std::uint64_t count = 0;
    std::vector<float> values;

    [[nodiscard]] const float* row(std::size_t i) const { return values.data() + i * dim; }
};

// "HSEM" file: magic, u32 version (1), u32 dim, u64 count, then count*dim
// float32 values, row-major. Everything little-endian.
inline constexpr char kEmbeddingMagic[4] = {'H', 'S', 'E', 'M'};
inline constexpr std::uint32_t kEmbeddingVersion = 1;

void write_embeddings(std::ostream& out, const EmbeddingMatrix& m);
void write_embeddings(const std::filesystem::path& path, const EmbeddingMatrix& m);

/// Throws DataError on bad magic/version, truncation or non-finite values.
EmbeddingMatrix read_embeddings(std::istream& in);
EmbeddingMatrix read_embeddings(const std::filesystem::path& path);

}  // namespace specret
