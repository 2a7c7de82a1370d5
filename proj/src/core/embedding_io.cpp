// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "specret/core/embedding_io.hpp"

#include <fstream>
#include <limits>
#include <string>

#include "specret/core/binary_io.hpp"
#include "specret/core/embedding.hpp"
#include "specret/core/errors.hpp"

namespace specret {

void write_embeddings(std::ostream& out, const EmbeddingMatrix& m) {
    if (m.values.size() != m.count * m.dim) {
        throw DataError("embedding matrix size does not match count*dim");
    }
    out.write(kEmbeddingMagic, 4);
    binio::put_le<std::uint32_t>(out, kEmbeddingVersion);
    binio::put_le<std::uint32_t>(out, m.dim);
    binio::put_le<std::uint64_t>(out, m.count);
    binio::put_f32_array(out, m.values);
    if (!out) {
        throw IoError("failed writing embedding stream");
    }
}

void write_embeddings(const std::filesystem::path& path, const EmbeddingMatrix& m) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open for writing: " + path.string());
    }
    write_embeddings(out, m);
}

EmbeddingMatrix read_embeddings(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::string_view(magic, 4) != std::string_view(kEmbeddingMagic, 4)) {
        throw DataError("not an HSEM embedding file (bad magic)");
    }
    const auto version = binio::get_le<std::uint32_t>(in);
    if (version != kEmbeddingVersion) {
        throw DataError("unsupported HSEM version " + std::to_string(version));
    }
    EmbeddingMatrix m;
    m.dim = binio::get_le<std::uint32_t>(in);
    m.count = binio::get_le<std::uint64_t>(in);
    if (m.dim == 0) {
        throw DataError("HSEM dim must be positive");
    }
    if (m.count > std::numeric_limits<std::size_t>::max() / m.dim / sizeof(float)) {
        throw DataError("HSEM count too large");
    }
    m.values.resize(m.count * m.dim);
    binio::get_f32_array(in, m.values);
    check_finite(m.values);
    return m;
}

EmbeddingMatrix read_embeddings(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open for reading: " + path.string());
    }
    return read_embeddings(in);
}

}  // namespace specret
