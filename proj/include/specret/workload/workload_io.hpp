// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <vector>

#include "specret/index/flat_index.hpp"
#include "specret/workload/generator.hpp"

// On-disk workload layout. Each embedding file (HSEM) has a metadata sidecar
// with one line per row, in row order: `id<TAB>entity_id<TAB>attr_ids`, where
// attr_ids is comma-separated (a document's covered attributes, or the single
// attribute of a query).
//
//   <corpus dir>/corpus.hsem, <corpus dir>/corpus.meta.tsv
//   <queries>.hsem with <queries>.meta.tsv next to it

namespace specret {

inline constexpr const char* kCorpusEmbeddings = "corpus.hsem";
inline constexpr const char* kCorpusMeta = "corpus.meta.tsv";

/// Path of the metadata sidecar for an embedding file (x.hsem -> x.meta.tsv).
std::filesystem::path sidecar_path(const std::filesystem::path& embeddings);

void save_corpus(const std::filesystem::path& dir, const std::vector<LabeledDoc>& docs);
std::vector<LabeledDoc> load_corpus(const std::filesystem::path& dir);

void save_queries(const std::filesystem::path& file, const std::vector<LabeledQuery>& queries);
std::vector<LabeledQuery> load_queries(const std::filesystem::path& file);

/// Flat index over all labeled docs.
FlatIndex build_flat_index(const std::vector<LabeledDoc>& docs);

}  // namespace specret
