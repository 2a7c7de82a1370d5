// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <fstream>
#include <sstream>

#include "specret/core/embedding_io.hpp"
#include "specret/core/errors.hpp"
#include "specret/workload/generator.hpp"
#include "specret/workload/workload_io.hpp"
#include "test_util.hpp"

namespace specret {
namespace {

GenConfig small() {
    GenConfig c;
    c.n_entities = 40;
    c.docs_per_entity = 10;
    c.n_queries = 500;
    c.seed = 17;
    return c;
}

bool contains(const std::vector<AttrId>& v, AttrId a) {
    return std::find(v.begin(), v.end(), a) != v.end();
}

TEST(Generator, StructuralInvariants) {
    const auto cfg = small();
    const auto w = gen_corpus(cfg);
    ASSERT_EQ(w.entities.size(), cfg.n_entities);
    ASSERT_EQ(w.docs.size(), cfg.n_entities * cfg.docs_per_entity);
    ASSERT_EQ(w.attr_vectors.size(), cfg.attr_vocab);
    for (std::size_t i = 0; i < w.docs.size(); ++i) {
        const auto& d = w.docs[i];
        EXPECT_EQ(d.doc_id, DocId{i});
        EXPECT_TRUE(d.embedding.is_normalized());
        EXPECT_EQ(d.covered_attrs.size(), cfg.attrs_per_doc);
        const auto& ent = w.entities[d.entity_id.value];
        for (auto a : d.covered_attrs) EXPECT_TRUE(contains(ent.attrs, a));
    }
    for (const auto& e : w.entities) {
        EXPECT_EQ(e.attrs.size(), cfg.attrs_per_entity);
        EXPECT_TRUE(std::is_sorted(e.attrs.begin(), e.attrs.end()));
        EXPECT_EQ(std::adjacent_find(e.attrs.begin(), e.attrs.end()), e.attrs.end());
        EXPECT_GT(e.popularity_weight, 0.0);
    }
    auto qs = gen_queries(cfg, w.entities, w.attr_vectors);
    ASSERT_EQ(qs.size(), cfg.n_queries);
    for (const auto& q : qs) {
        EXPECT_TRUE(contains(w.entities[q.entity_id.value].attrs, q.attr_id));
        EXPECT_TRUE(q.embedding.is_normalized());
    }
}

TEST(Generator, EveryEntityAttributeIsCovered) {
    const auto w = gen_corpus(small());
    std::map<std::pair<std::uint64_t, std::uint64_t>, int> cover;
    for (const auto& d : w.docs)
        for (auto a : d.covered_attrs) ++cover[{d.entity_id.value, a.value}];
    for (const auto& e : w.entities)
        for (auto a : e.attrs) EXPECT_GT((cover[{e.entity_id.value, a.value}]), 0);
}

TEST(Generator, NoiseFreeCollapse) {
    auto cfg = small();
    cfg.noise = 0.0;
    cfg.attrs_per_doc = 1;
    const auto w = gen_corpus(cfg);
    std::map<std::pair<std::uint64_t, std::uint64_t>, const LabeledDoc*> first;
    std::size_t collisions = 0;
    for (const auto& d : w.docs) {
        auto key = std::make_pair(d.entity_id.value, d.covered_attrs[0].value);
        auto [it, fresh] = first.emplace(key, &d);
        if (!fresh) {
            ++collisions;
            EXPECT_EQ(d.embedding, it->second->embedding);
        }
    }
    EXPECT_GT(collisions, 0U);
}

TEST(Generator, PureEntitySignalGivesBaseGeometry) {
    GenConfig cfg;
    cfg.n_entities = 2;
    cfg.docs_per_entity = 3;
    cfg.dim = 4096;
    cfg.attr_signal = 0.0;
    cfg.noise = 0.0;
    cfg.n_queries = 1;
    const auto w = gen_corpus(cfg);
    const auto& b0 = w.entities[0].base_vec;
    const auto& b1 = w.entities[1].base_vec;
    EXPECT_LT(std::abs(inner_product(b0, b1)), 0.1);
    for (const auto& d : w.docs) {
        const auto& base = w.entities[d.entity_id.value].base_vec;
        EXPECT_NEAR(inner_product(d.embedding, base), 1.0, 1e-5);
    }
    EXPECT_NEAR(inner_product(w.docs[0].embedding, w.docs[3].embedding), inner_product(b0, b1), 1e-5);
}

TEST(Generator, DefaultAlignmentAtLeastTwo) {
    GenConfig cfg;
    cfg.n_queries = 1000;
    const auto w = gen_corpus(cfg);
    const auto qs = gen_queries(cfg, w.entities, w.attr_vectors);
    const auto index = build_flat_index(w.docs);
    double aligned = 0.0;
    for (const auto& q : qs) {
        for (const auto& h : index.topk(q.embedding, 5))
            aligned += w.docs[h.id.value].entity_id == q.entity_id ? 1.0 : 0.0;
    }
    EXPECT_GE(aligned / static_cast<double>(qs.size()), 2.0);
}

TEST(Generator, ZipfZeroIsUniform) {
    auto cfg = small();
    cfg.zipf_s = 0.0;
    cfg.n_entities = 20;
    cfg.n_queries = 20000;
    const auto w = gen_corpus(cfg);
    const auto qs = gen_queries(cfg, w.entities, w.attr_vectors);
    std::vector<int> counts(cfg.n_entities, 0);
    for (const auto& q : qs) ++counts[q.entity_id.value];
    const double n = static_cast<double>(cfg.n_queries);
    const double p = 1.0 / static_cast<double>(cfg.n_entities);
    const double sd = std::sqrt(n * p * (1.0 - p));
    for (int c : counts) EXPECT_NEAR(c, n * p, 3.0 * sd);
}

TEST(Generator, SingleEntityMakesEveryPairHomologous) {
    auto cfg = small();
    cfg.n_entities = 1;
    cfg.n_queries = 50;
    const auto w = gen_corpus(cfg);
    const auto qs = gen_queries(cfg, w.entities, w.attr_vectors);
    for (std::size_t i = 0; i < qs.size(); ++i)
        for (std::size_t j = i + 1; j < qs.size(); ++j)
            EXPECT_NE(homology_relation(qs[i], qs[j]), Homology::None);
    EXPECT_DOUBLE_EQ(homologous_prevalence(qs), 1.0);
}

TEST(Generator, ReferencePrevalence) {
    GenConfig cfg;
    const auto w = gen_corpus(cfg);
    const auto qs = gen_queries(cfg, w.entities, w.attr_vectors);
    std::map<std::uint64_t, int> freq;
    for (const auto& q : qs) ++freq[q.entity_id.value];
    std::size_t repeated = 0;
    for (const auto& q : qs) repeated += freq[q.entity_id.value] >= 2;
    const double expected = static_cast<double>(repeated) / static_cast<double>(qs.size());
    EXPECT_DOUBLE_EQ(homologous_prevalence(qs), expected);
    EXPECT_GT(expected, 0.6);
}

TEST(Generator, Deterministic) {
    const auto cfg = small();
    const auto a = gen_corpus(cfg);
    const auto b = gen_corpus(cfg);
    ASSERT_EQ(a.docs.size(), b.docs.size());
    for (std::size_t i = 0; i < a.docs.size(); ++i) EXPECT_EQ(a.docs[i].embedding, b.docs[i].embedding);
    const auto qa = gen_queries(cfg, a.entities, a.attr_vectors);
    const auto qb = gen_queries(cfg, b.entities, b.attr_vectors);
    for (std::size_t i = 0; i < qa.size(); ++i) {
        EXPECT_EQ(qa[i].embedding, qb[i].embedding);
        EXPECT_EQ(qa[i].entity_id, qb[i].entity_id);
        EXPECT_EQ(qa[i].attr_id, qb[i].attr_id);
    }
    auto other = cfg;
    other.seed = 18;
    EXPECT_NE(gen_corpus(other).docs[0].embedding, a.docs[0].embedding);
}

TEST(Generator, QueryCountDoesNotShiftCorpus) {
    auto cfg = small();
    const auto a = gen_corpus(cfg);
    cfg.n_queries = 7;
    const auto b = gen_corpus(cfg);
    for (std::size_t i = 0; i < a.docs.size(); ++i) EXPECT_EQ(a.docs[i].embedding, b.docs[i].embedding);
}

LabeledDoc doc(std::uint64_t e, std::vector<std::uint64_t> attrs) {
    LabeledDoc d;
    d.entity_id = EntityId{e};
    for (auto a : attrs) d.covered_attrs.push_back(AttrId{a});
    return d;
}

LabeledQuery query(std::uint64_t e, std::uint64_t a) {
    LabeledQuery q;
    q.entity_id = EntityId{e};
    q.attr_id = AttrId{a};
    return q;
}

TEST(Labels, Golden) {
    EXPECT_TRUE(is_golden(doc(1, {2, 3}), query(1, 3)));
    EXPECT_FALSE(is_golden(doc(1, {2, 3}), query(1, 4)));
    EXPECT_FALSE(is_golden(doc(1, {2, 3}), query(2, 3)));
}

TEST(Labels, HomologyRelation) {
    EXPECT_EQ(homology_relation(query(1, 2), query(1, 2)), Homology::Full);
    EXPECT_EQ(homology_relation(query(1, 2), query(1, 3)), Homology::Homologous);
    EXPECT_EQ(homology_relation(query(1, 2), query(2, 2)), Homology::None);
}

TEST(Labels, QuasiHomology) {
    std::vector<LabeledDoc> corpus{doc(1, {2, 3}), doc(2, {2})};
    EXPECT_TRUE(is_quasi_homologous(query(1, 2), query(1, 2), corpus));
    EXPECT_TRUE(is_quasi_homologous(query(1, 2), query(1, 3), corpus));
    EXPECT_FALSE(is_quasi_homologous(query(1, 2), query(2, 2), corpus));
}

TEST(Labels, HomologousPairsAreMoreOftenQuasiHomologous) {
    GenConfig cfg;
    cfg.n_queries = 400;
    const auto w = gen_corpus(cfg);
    const auto qs = gen_queries(cfg, w.entities, w.attr_vectors);
    std::size_t hom = 0;
    std::size_t hom_q = 0;
    std::size_t non = 0;
    std::size_t non_q = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        for (std::size_t j = i + 1; j < qs.size(); ++j) {
            const bool quasi = is_quasi_homologous(qs[i], qs[j], w.docs);
            if (homology_relation(qs[i], qs[j]) == Homology::None) {
                ++non;
                non_q += quasi;
            } else {
                ++hom;
                hom_q += quasi;
            }
            if (homology_relation(qs[i], qs[j]) == Homology::Full) {
                EXPECT_TRUE(quasi);
            }
        }
    }
    ASSERT_GT(hom, 0U);
    EXPECT_GT(static_cast<double>(hom_q) / hom, static_cast<double>(non_q) / non);
}

TEST(GenConfigParse, OverridesAndComments) {
    std::istringstream in("# comment\n\nn_entities = 12\nnoise=0.1\n  seed = 9  \n");
    auto c = parse_gen_config(in);
    EXPECT_EQ(c.n_entities, 12U);
    EXPECT_DOUBLE_EQ(c.noise, 0.1);
    EXPECT_EQ(c.seed, 9U);
    EXPECT_EQ(c.dim, 64U);
}

TEST(GenConfigParse, RoundTrip) {
    auto c = small();
    c.zipf_s = 1.25;
    std::stringstream ss;
    write_gen_config(ss, c);
    auto back = parse_gen_config(ss);
    EXPECT_EQ(back.n_entities, c.n_entities);
    EXPECT_EQ(back.seed, c.seed);
    EXPECT_DOUBLE_EQ(back.zipf_s, 1.25);
}

TEST(GenConfigParse, Errors) {
    std::istringstream unknown("colour = blue\n");
    EXPECT_THROW(parse_gen_config(unknown), ConfigError);
    std::istringstream bad("n_entities = lots\n");
    EXPECT_THROW(parse_gen_config(bad), ConfigError);
    std::istringstream noeq("n_entities 5\n");
    EXPECT_THROW(parse_gen_config(noeq), ConfigError);
    std::istringstream order("attr_signal = 1.5\n");
    EXPECT_THROW(parse_gen_config(order), ConfigError);
    GenConfig c;
    c.attrs_per_doc = 9;
    EXPECT_THROW(c.validate(), ConfigError);
}

TEST(WorkloadIo, RoundTrip) {
    const auto cfg = small();
    const auto w = gen_corpus(cfg);
    const auto qs = gen_queries(cfg, w.entities, w.attr_vectors);
    const auto dir = testing::temp_dir("wlio");
    save_corpus(dir, w.docs);
    save_queries(dir / "q.hsem", qs);
    EXPECT_TRUE(std::filesystem::exists(dir / "corpus.meta.tsv"));
    EXPECT_EQ(sidecar_path(dir / "q.hsem"), dir / "q.meta.tsv");
    const auto docs = load_corpus(dir);
    const auto back = load_queries(dir / "q.hsem");
    ASSERT_EQ(docs.size(), w.docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        EXPECT_EQ(docs[i].doc_id, w.docs[i].doc_id);
        EXPECT_EQ(docs[i].entity_id, w.docs[i].entity_id);
        EXPECT_EQ(docs[i].covered_attrs, w.docs[i].covered_attrs);
        EXPECT_EQ(docs[i].embedding, w.docs[i].embedding);
    }
    ASSERT_EQ(back.size(), qs.size());
    EXPECT_EQ(back[3].attr_id, qs[3].attr_id);
    std::filesystem::remove_all(dir);
}

TEST(WorkloadIo, SidecarMismatch) {
    const auto cfg = small();
    const auto w = gen_corpus(cfg);
    const auto dir = testing::temp_dir("wlbad");
    save_corpus(dir, w.docs);
    {
        std::ofstream meta(dir / "corpus.meta.tsv");
        meta << "0\t0\t1\n";
    }
    EXPECT_THROW(load_corpus(dir), DataError);
    std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace specret
