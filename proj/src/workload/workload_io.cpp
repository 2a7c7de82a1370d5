// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "specret/workload/workload_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "specret/core/embedding_io.hpp"
#include "specret/core/errors.hpp"

namespace specret {

namespace {

struct MetaRow {
    std::uint64_t id = 0;
    std::uint64_t entity = 0;
    std::vector<std::uint64_t> attrs;
};

std::uint64_t parse_u64(std::string_view s, const std::filesystem::path& file, std::size_t line) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw DataError(file.string() + ":" + std::to_string(line) + ": bad integer '" +
                        std::string(s) + "'");
    }
    return v;
}

std::vector<MetaRow> read_meta(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot open metadata file " + file.string());
    std::vector<MetaRow> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto t1 = line.find('\t');
        const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
            throw DataError(file.string() + ":" + std::to_string(lineno) + ": expected 3 tab-separated fields");
        }
        MetaRow row;
        row.id = parse_u64(std::string_view(line).substr(0, t1), file, lineno);
        row.entity = parse_u64(std::string_view(line).substr(t1 + 1, t2 - t1 - 1), file, lineno);
        std::string_view attrs = std::string_view(line).substr(t2 + 1);
        while (!attrs.empty()) {
            const auto comma = attrs.find(',');
            row.attrs.push_back(parse_u64(attrs.substr(0, comma), file, lineno));
            if (comma == std::string_view::npos) break;
            attrs.remove_prefix(comma + 1);
        }
        if (row.attrs.empty()) {
            throw DataError(file.string() + ":" + std::to_string(lineno) + ": empty attribute list");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_meta_line(std::ostream& out, std::uint64_t id, std::uint64_t entity,
                     const std::vector<AttrId>& attrs) {
    out << id << '\t' << entity << '\t';
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        if (i > 0) out << ',';
        out << attrs[i].value;
    }
    out << '\n';
}

template <typename Item>
EmbeddingMatrix to_matrix(const std::vector<Item>& items, const Embedding Item::*field) {
    EmbeddingMatrix m;
    m.count = items.size();
    m.dim = items.empty() ? 1 : static_cast<std::uint32_t>((items.front().*field).dim());
    m.values.reserve(m.count * m.dim);
    for (const auto& it : items) {
        const auto v = (it.*field).values();
        if (v.size() != m.dim) throw DimError("inconsistent embedding dimensions");
        m.values.insert(m.values.end(), v.begin(), v.end());
    }
    return m;
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + p.string());
    return out;
}

void check_rows(const EmbeddingMatrix& m, const std::vector<MetaRow>& meta,
                const std::filesystem::path& file) {
    if (meta.size() != m.count) {
        throw DataError(file.string() + ": " + std::to_string(meta.size()) +
                        " metadata rows for " + std::to_string(m.count) + " embeddings");
    }
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& embeddings) {
    auto p = embeddings;
    p.replace_extension(".meta.tsv");
    return p;
}

void save_corpus(const std::filesystem::path& dir, const std::vector<LabeledDoc>& docs) {
    std::filesystem::create_directories(dir);
    write_embeddings(dir / kCorpusEmbeddings, to_matrix(docs, &LabeledDoc::embedding));
    auto out = open_out(dir / kCorpusMeta);
    for (const auto& d : docs) write_meta_line(out, d.doc_id.value, d.entity_id.value, d.covered_attrs);
    if (!out) throw IoError("failed writing corpus metadata");
}

std::vector<LabeledDoc> load_corpus(const std::filesystem::path& dir) {
    const auto m = read_embeddings(dir / kCorpusEmbeddings);
    const auto meta = read_meta(dir / kCorpusMeta);
    check_rows(m, meta, dir / kCorpusMeta);
    std::vector<LabeledDoc> docs;
    docs.reserve(m.count);
    for (std::size_t i = 0; i < m.count; ++i) {
        LabeledDoc d;
        d.doc_id = DocId(meta[i].id);
        d.entity_id = EntityId(meta[i].entity);
        for (auto a : meta[i].attrs) d.covered_attrs.emplace_back(a);
        std::sort(d.covered_attrs.begin(), d.covered_attrs.end());
        d.embedding = Embedding(std::vector<float>(m.row(i), m.row(i) + m.dim));
        docs.push_back(std::move(d));
    }
    return docs;
}

void save_queries(const std::filesystem::path& file, const std::vector<LabeledQuery>& queries) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    write_embeddings(file, to_matrix(queries, &LabeledQuery::embedding));
    auto out = open_out(sidecar_path(file));
    for (const auto& q : queries) write_meta_line(out, q.query_id.value, q.entity_id.value, {q.attr_id});
    if (!out) throw IoError("failed writing query metadata");
}

std::vector<LabeledQuery> load_queries(const std::filesystem::path& file) {
    const auto m = read_embeddings(file);
    const auto meta_file = sidecar_path(file);
    const auto meta = read_meta(meta_file);
    check_rows(m, meta, meta_file);
    std::vector<LabeledQuery> queries;
    queries.reserve(m.count);
    for (std::size_t i = 0; i < m.count; ++i) {
        if (meta[i].attrs.size() != 1) {
            throw DataError(meta_file.string() + ": query rows carry exactly one attribute");
        }
        LabeledQuery q;
        q.query_id = QueryId(meta[i].id);
        q.entity_id = EntityId(meta[i].entity);
        q.attr_id = AttrId(meta[i].attrs.front());
        q.embedding = Embedding(std::vector<float>(m.row(i), m.row(i) + m.dim));
        queries.push_back(std::move(q));
    }
    return queries;
}

FlatIndex build_flat_index(const std::vector<LabeledDoc>& docs) {
    if (docs.empty()) throw DataError("corpus is empty");
    FlatIndex index(docs.front().embedding.dim());
    index.reserve(docs.size());
    for (const auto& d : docs) index.add(d.doc_id, d.embedding.values());
    return index;
}

}  // namespace specret
