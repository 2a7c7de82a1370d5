// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "specret/workload/generator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <unordered_map>

#include "specret/core/errors.hpp"
#include "specret/core/rng.hpp"

namespace specret {

namespace {

constexpr std::uint64_t kCorpusStream = 0xC0;
constexpr std::uint64_t kQueryStream = 0x9E;

Embedding mix_embedding(double entity_signal, const Embedding& base, double attr_signal,
                        const std::vector<double>& attr_part, double noise, RngStream& rng) {
    const std::size_t dim = base.dim();
    std::vector<float> v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const double z = noise > 0.0 ? rng.normal() : 0.0;
        v[i] = static_cast<float>(entity_signal * base[i] + attr_signal * attr_part[i] + noise * z);
    }
    return normalize(Embedding(std::move(v)));
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError("bad value for '" + key + "': " + value);
    }
    return out;
}

}  // namespace

void GenConfig::validate() const {
    if (n_entities == 0 || attrs_per_entity == 0 || docs_per_entity == 0 || attrs_per_doc == 0 ||
        dim == 0 || n_queries == 0) {
        throw ConfigError("counts and dim must be positive");
    }
    if (attrs_per_entity > attr_vocab) {
        throw ConfigError("attrs_per_entity exceeds attr_vocab");
    }
    if (attrs_per_doc > attrs_per_entity) {
        throw ConfigError("attrs_per_doc exceeds attrs_per_entity");
    }
    for (double x : {entity_signal, attr_signal, noise, zipf_s}) {
        if (!std::isfinite(x) || x < 0.0) throw ConfigError("signals, noise and zipf_s must be finite and >= 0");
    }
    // The entity signal must dominate.
    if (!(entity_signal > attr_signal && attr_signal >= noise)) {
        throw ConfigError("require entity_signal > attr_signal >= noise");
    }
}

GenConfig parse_gen_config(std::istream& in) {
    GenConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "n_entities") cfg.n_entities = parse_number<std::size_t>(key, value);
        else if (key == "attrs_per_entity") cfg.attrs_per_entity = parse_number<std::size_t>(key, value);
        else if (key == "attr_vocab") cfg.attr_vocab = parse_number<std::size_t>(key, value);
        else if (key == "docs_per_entity") cfg.docs_per_entity = parse_number<std::size_t>(key, value);
        else if (key == "attrs_per_doc") cfg.attrs_per_doc = parse_number<std::size_t>(key, value);
        else if (key == "dim") cfg.dim = parse_number<std::size_t>(key, value);
        else if (key == "entity_signal") cfg.entity_signal = parse_number<double>(key, value);
        else if (key == "attr_signal") cfg.attr_signal = parse_number<double>(key, value);
        else if (key == "noise") cfg.noise = parse_number<double>(key, value);
        else if (key == "zipf_s") cfg.zipf_s = parse_number<double>(key, value);
        else if (key == "n_queries") cfg.n_queries = parse_number<std::size_t>(key, value);
        else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

void write_gen_config(std::ostream& out, const GenConfig& cfg) {
    out << "n_entities=" << cfg.n_entities << '\n'
        << "attrs_per_entity=" << cfg.attrs_per_entity << '\n'
        << "attr_vocab=" << cfg.attr_vocab << '\n'
        << "docs_per_entity=" << cfg.docs_per_entity << '\n'
        << "attrs_per_doc=" << cfg.attrs_per_doc << '\n'
        << "dim=" << cfg.dim << '\n'
        << "entity_signal=" << cfg.entity_signal << '\n'
        << "attr_signal=" << cfg.attr_signal << '\n'
        << "noise=" << cfg.noise << '\n'
        << "zipf_s=" << cfg.zipf_s << '\n'
        << "n_queries=" << cfg.n_queries << '\n'
        << "seed=" << cfg.seed << '\n';
}

Workload gen_corpus(const GenConfig& cfg) {
    cfg.validate();
    RngStream rng = RngStream::derive(cfg.seed, kCorpusStream);
    Workload w;
    w.config = cfg;

    w.attr_vectors.reserve(cfg.attr_vocab);
    for (std::size_t a = 0; a < cfg.attr_vocab; ++a) {
        w.attr_vectors.emplace_back(rng.unit_vector(cfg.dim));
    }

    // Popularity rank is a seeded permutation of the entities.
    std::vector<std::size_t> rank(cfg.n_entities);
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    for (std::size_t i = rank.size(); i > 1; --i) std::swap(rank[i - 1], rank[rng.below(i)]);

    std::vector<std::size_t> vocab(cfg.attr_vocab);
    w.entities.reserve(cfg.n_entities);
    for (std::size_t e = 0; e < cfg.n_entities; ++e) {
        EntityProfile p;
        p.entity_id = EntityId(e);
        p.base_vec = Embedding(rng.unit_vector(cfg.dim));
        std::iota(vocab.begin(), vocab.end(), std::size_t{0});
        for (std::size_t i = 0; i < cfg.attrs_per_entity; ++i) {
            std::swap(vocab[i], vocab[i + rng.below(vocab.size() - i)]);
            p.attrs.emplace_back(vocab[i]);
        }
        std::sort(p.attrs.begin(), p.attrs.end());
        p.popularity_weight = 1.0 / std::pow(static_cast<double>(rank[e] + 1), cfg.zipf_s);
        w.entities.push_back(std::move(p));
    }

    std::vector<double> attr_part(cfg.dim);
    std::vector<std::size_t> slots(cfg.attrs_per_entity);
    w.docs.reserve(cfg.n_entities * cfg.docs_per_entity);
    for (const auto& p : w.entities) {
        for (std::size_t j = 0; j < cfg.docs_per_entity; ++j) {
            // Doc j always covers attribute j mod n so every attribute has a doc.
            std::iota(slots.begin(), slots.end(), std::size_t{0});
            std::swap(slots[0], slots[j % slots.size()]);
            for (std::size_t i = 1; i < cfg.attrs_per_doc; ++i) {
                std::swap(slots[i], slots[i + rng.below(slots.size() - i)]);
            }
            LabeledDoc d;
            d.doc_id = DocId(w.docs.size());
            d.entity_id = p.entity_id;
            std::fill(attr_part.begin(), attr_part.end(), 0.0);
            for (std::size_t i = 0; i < cfg.attrs_per_doc; ++i) {
                const AttrId a = p.attrs[slots[i]];
                d.covered_attrs.push_back(a);
                const Embedding& av = w.attr_vectors[a.value];
                for (std::size_t x = 0; x < cfg.dim; ++x) {
                    attr_part[x] += av[x] / static_cast<double>(cfg.attrs_per_doc);
                }
            }
            std::sort(d.covered_attrs.begin(), d.covered_attrs.end());
            d.embedding = mix_embedding(cfg.entity_signal, p.base_vec, cfg.attr_signal, attr_part,
                                        cfg.noise, rng);
            w.docs.push_back(std::move(d));
        }
    }
    return w;
}

std::vector<LabeledQuery> gen_queries(const GenConfig& cfg, const std::vector<EntityProfile>& profiles,
                                      const std::vector<Embedding>& attr_vectors) {
    if (profiles.empty()) {
        throw ConfigError("query generation needs at least one entity");
    }
    RngStream rng = RngStream::derive(cfg.seed, kQueryStream);

    std::vector<double> cdf(profiles.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        acc += profiles[i].popularity_weight;
        cdf[i] = acc;
    }

    std::vector<LabeledQuery> out;
    out.reserve(cfg.n_queries);
    std::vector<double> attr_part;
    for (std::size_t n = 0; n < cfg.n_queries; ++n) {
        const double u = rng.uniform() * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto& p = profiles[std::min<std::size_t>(it - cdf.begin(), profiles.size() - 1)];
        const AttrId a = p.attrs[rng.below(p.attrs.size())];
        const Embedding& av = attr_vectors.at(a.value);
        attr_part.assign(av.values().begin(), av.values().end());
        LabeledQuery q;
        q.query_id = QueryId(n);
        q.entity_id = p.entity_id;
        q.attr_id = a;
        q.embedding =
            mix_embedding(cfg.entity_signal, p.base_vec, cfg.attr_signal, attr_part, cfg.noise, rng);
        out.push_back(std::move(q));
    }
    return out;
}

bool is_golden(const LabeledDoc& d, const LabeledQuery& q) noexcept {
    return d.entity_id == q.entity_id &&
           std::find(d.covered_attrs.begin(), d.covered_attrs.end(), q.attr_id) != d.covered_attrs.end();
}

Homology homology_relation(const LabeledQuery& a, const LabeledQuery& b) noexcept {
    if (a.entity_id != b.entity_id) return Homology::None;
    return a.attr_id == b.attr_id ? Homology::Full : Homology::Homologous;
}

bool is_quasi_homologous(const LabeledQuery& a, const LabeledQuery& b,
                         const std::vector<LabeledDoc>& corpus) {
    return std::any_of(corpus.begin(), corpus.end(),
                       [&](const LabeledDoc& d) { return is_golden(d, a) && is_golden(d, b); });
}

double homologous_prevalence(const std::vector<LabeledQuery>& queries) {
    if (queries.empty()) return 0.0;
    std::unordered_map<EntityId, std::size_t> counts;
    for (const auto& q : queries) ++counts[q.entity_id];
    std::size_t shared = 0;
    for (const auto& q : queries) {
        if (counts[q.entity_id] >= 2) ++shared;
    }
    return static_cast<double>(shared) / static_cast<double>(queries.size());
}

}  // namespace specret
