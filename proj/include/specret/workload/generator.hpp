// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "specret/core/embedding.hpp"
#include "specret/core/ids.hpp"

namespace specret {

struct EntityProfile {
    EntityId entity_id;
    Embedding base_vec;
    std::vector<AttrId> attrs;  // distinct, ascending
    double popularity_weight = 1.0;
};

struct LabeledDoc {
    DocId doc_id;
    Embedding embedding;
    EntityId entity_id;
    std::vector<AttrId> covered_attrs;  // distinct, ascending, subset of the entity's attrs
};

struct LabeledQuery {
    QueryId query_id;
    Embedding embedding;
    EntityId entity_id;
    AttrId attr_id;
};

/// Synthetic entity/attribute workload parameters.
///
/// A document embedding is normalize(entity_signal * base + attr_signal *
/// mean(covered attr vectors) + noise * z) and a query embedding is
/// normalize(entity_signal * base + attr_signal * attr vector + noise * z),
/// where z has i.i.d. standard normal components. Attribute ids index a global
/// vocabulary of `attr_vocab` relation types shared by all entities.
struct GenConfig {
    std::size_t n_entities = 500;
    std::size_t attrs_per_entity = 8;
    std::size_t attr_vocab = 32;
    std::size_t docs_per_entity = 20;
    std::size_t attrs_per_doc = 3;
    std::size_t dim = 64;
    double entity_signal = 1.0;
    double attr_signal = 0.4;
    double noise = 0.15;
    double zipf_s = 1.0;
    std::size_t n_queries = 10000;
    std::uint64_t seed = 42;

    /// Throws ConfigError on invalid combinations.
    void validate() const;
};

/// Reads `key = value` lines (blank lines and '#' comments allowed) over the
/// defaults. Unknown keys and malformed values throw ConfigError.
GenConfig parse_gen_config(std::istream& in);
void write_gen_config(std::ostream& out, const GenConfig& cfg);

struct Workload {
    GenConfig config;
    std::vector<EntityProfile> entities;
    std::vector<Embedding> attr_vectors;  // indexed by AttrId
    std::vector<LabeledDoc> docs;
};

/// Entities, attribute vectors and documents. Doc ids are 0..n-1 in entity order.
Workload gen_corpus(const GenConfig& cfg);

/// Query stream: entity ~ Zipf(zipf_s) over popularity rank, attribute uniform
/// over the entity's attributes. Uses its own RNG stream, so the corpus does
/// not shift when n_queries changes.
std::vector<LabeledQuery> gen_queries(const GenConfig& cfg, const std::vector<EntityProfile>& profiles,
                                      const std::vector<Embedding>& attr_vectors);

/// Ground-truth labels

bool is_golden(const LabeledDoc& d, const LabeledQuery& q) noexcept;

enum class Homology { Full, Homologous, None };

Homology homology_relation(const LabeledQuery& a, const LabeledQuery& b) noexcept;

/// True iff some document in `corpus` is golden for both queries.
bool is_quasi_homologous(const LabeledQuery& a, const LabeledQuery& b,
                         const std::vector<LabeledDoc>& corpus);

/// Fraction of queries whose entity occurs at least twice in the stream.
double homologous_prevalence(const std::vector<LabeledQuery>& queries);

}  // namespace specret
