// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "specret/core/errors.hpp"
#include "specret/engine/engine.hpp"
#include "specret/engine/homology.hpp"
#include "test_util.hpp"

namespace specret {
namespace {

using testing::make_flat;
using testing::random_units;

constexpr std::size_t kDim = 16;

RankedHits ranked(std::initializer_list<std::pair<std::uint64_t, float>> xs) {
    RankedHits h;
    for (auto [id, s] : xs) h.push_back({DocId{id}, s});
    return h;
}

std::string dump_of(const QueryCache& c) {
    std::ostringstream os;
    c.dump(os);
    return os.str();
}

TEST(MergeDraft, FuzzyOnly) {
    auto d = merge_draft({}, ranked({{1, 0.9F}, {2, 0.8F}}), 10);
    EXPECT_EQ(ids_of(d.hits), (std::vector<DocId>{DocId{1}, DocId{2}}));
    EXPECT_EQ(d.provenance, (std::vector<Provenance>{Provenance::Fuzzy, Provenance::Fuzzy}));
}

TEST(MergeDraft, DedupMarksBoth) {
    auto d = merge_draft(ranked({{5, 0.7F}, {3, 0.6F}}), ranked({{5, 0.7F}, {4, 0.65F}}), 10);
    EXPECT_EQ(ids_of(d.hits), (std::vector<DocId>{DocId{5}, DocId{4}, DocId{3}}));
    EXPECT_EQ(d.provenance,
              (std::vector<Provenance>{Provenance::Both, Provenance::Fuzzy, Provenance::Cache}));
}

TEST(MergeDraft, TruncatesAndTieBreaks) {
    auto d = merge_draft(ranked({{9, 0.5F}, {2, 0.4F}}), ranked({{3, 0.5F}, {1, 0.1F}}), 2);
    EXPECT_EQ(ids_of(d.hits), (std::vector<DocId>{DocId{3}, DocId{9}}));
}

class EngineTest : public ::testing::Test {
  protected:
    EngineTest() : corpus_(make_flat(random_units(9, 600, kDim))) {}

    EngineConfig config(double tau) const {
        EngineConfig c;
        c.k = 10;
        c.tau = tau;
        c.h_max = 50;
        c.n_buckets = 16;
        c.n_probe = 2;
        c.seed = 3;
        return c;
    }

    FlatIndex corpus_;
};

TEST_F(EngineTest, DraftEqualsFlatOverUnionPool) {
    SpeculativeRetriever eng(corpus_, config(0.2), LatencyConfig{});
    auto warmups = random_units(90, 30, kDim);
    for (std::size_t i = 0; i < warmups.size(); ++i) eng.warm(QueryId{i}, Embedding(warmups[i]));

    for (const auto& q : random_units(91, 40, kDim)) {
        std::set<DocId> pool(eng.cache().pool_ids().begin(), eng.cache().pool_ids().end());
        for (auto b : eng.fuzzy_channel().probe_order(q, 2))
            for (auto id : eng.fuzzy_channel().bucket(b).ids) pool.insert(id);
        FlatIndex materialized(kDim);
        for (auto id : pool) materialized.add(id, corpus_.find(id));
        const Draft d = eng.build_draft(q);
        EXPECT_EQ(d.hits, materialized.topk(q, 10));
        EXPECT_TRUE(is_well_ranked(d.hits));
        ASSERT_EQ(d.provenance.size(), d.hits.size());
    }
}

TEST_F(EngineTest, HomologyMatchesSetIntersection) {
    std::mt19937_64 gen(50);
    auto qs = random_units(51, 50, kDim);
    for (int trial = 0; trial < 20; ++trial) {
        QueryCache cache(50, kDim);
        std::vector<std::set<DocId>> results;
        for (std::uint64_t q = 0; q < 50; ++q) {
            std::set<DocId> ids;
            while (ids.size() < 10) ids.insert(DocId{gen() % 40});
            RankedHits h;
            for (auto id : ids) h.push_back({id, 0.0F});
            cache.insert(QueryId{q}, Embedding(qs[q]), h, corpus_);
            results.push_back(ids);
        }
        std::set<DocId> draft_ids;
        const std::size_t len = 1 + gen() % 10;
        while (draft_ids.size() < len) draft_ids.insert(DocId{gen() % 40});
        RankedHits draft;
        for (auto id : draft_ids) draft.push_back({id, 0.0F});

        const auto table = score_homology(draft, cache, 10);
        std::size_t expected_rows = 0;
        for (std::uint64_t q = 0; q < 50; ++q) {
            std::size_t f = 0;
            for (auto id : draft_ids) f += results[q].count(id);
            const auto* row = table.find(q);
            if (f == 0) {
                EXPECT_EQ(row, nullptr);
                continue;
            }
            ++expected_rows;
            ASSERT_NE(row, nullptr);
            EXPECT_EQ(row->query, QueryId{q});
            EXPECT_EQ(row->frequency, f);
            EXPECT_EQ(row->score, static_cast<double>(f) / 10.0);
        }
        EXPECT_EQ(table.rows.size(), expected_rows);
    }
}

TEST_F(EngineTest, HomologyFullOverlapAndNoOverlap) {
    QueryCache cache(4, kDim);
    RankedHits h;
    for (std::uint64_t i = 0; i < 10; ++i) h.push_back({DocId{i}, 1.0F - 0.01F * i});
    cache.insert(QueryId{1}, Embedding(random_units(1, 1, kDim)[0]), h, corpus_);
    auto full = score_homology(h, cache, 10);
    ASSERT_NE(full.best(), nullptr);
    EXPECT_EQ(full.best()->score, 1.0);
    auto none = score_homology(ranked({{100, 0.5F}}), cache, 10);
    EXPECT_TRUE(none.rows.empty());
    EXPECT_FALSE(validate(none, 0.0).accepted);
}

TEST(Validate, Boundaries) {
    HomologyScoreTable t{10, {{QueryId{4}, 0, 3, 0.3}}};
    EXPECT_TRUE(validate(t, 0.2).accepted);
    HomologyScoreTable eq{10, {{QueryId{4}, 0, 2, 0.2}}};
    EXPECT_FALSE(validate(eq, 0.2).accepted);
    HomologyScoreTable one{10, {{QueryId{4}, 0, 10, 1.0}}};
    EXPECT_FALSE(validate(one, 1.0).accepted);
}

TEST(Validate, TieGoesToLowestQueryId) {
    HomologyScoreTable t{10,
                         {{QueryId{8}, 0, 5, 0.5}, {QueryId{3}, 1, 5, 0.5}, {QueryId{6}, 2, 4, 0.4}}};
    auto r = validate(t, 0.2);
    ASSERT_TRUE(r.accepted);
    EXPECT_EQ(r.matched_query, QueryId{3});
    EXPECT_EQ(r.matched_seq, 1U);
}

TEST_F(EngineTest, ColdStartRejectsWithFlatResult) {
    SpeculativeRetriever eng(corpus_, config(0.2), LatencyConfig{});
    auto q = random_units(70, 1, kDim)[0];
    auto out = eng.retrieve(QueryId{1}, Embedding(q), 0);
    EXPECT_FALSE(out.accepted);
    EXPECT_EQ(out.docs, corpus_.topk(q, 10));
    EXPECT_GT(out.latency.cloud_seconds, 0.0);
    EXPECT_EQ(eng.cache().size(), 1U);
}

TEST_F(EngineTest, RepeatedQueryAcceptsWithFullOverlap) {
    SpeculativeRetriever eng(corpus_, config(0.2), LatencyConfig{});
    auto q = random_units(71, 1, kDim)[0];
    auto first = eng.retrieve(QueryId{1}, Embedding(q), 0);
    auto second = eng.retrieve(QueryId{2}, Embedding(q), 1);
    ASSERT_TRUE(second.accepted);
    EXPECT_EQ(second.matched_query, QueryId{1});
    EXPECT_EQ(second.match_score, 1.0);
    EXPECT_EQ(second.docs, first.docs);
    EXPECT_EQ(second.latency.cloud_seconds, 0.0);
    EXPECT_EQ(second.cloud_rng_draws, 0U);
}

TEST_F(EngineTest, TauOneAlwaysMatchesFlat) {
    SpeculativeRetriever eng(corpus_, config(1.0), LatencyConfig{});
    auto qs = random_units(72, 100, kDim);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        // Repeat each query so acceptance would be possible at any lower tau.
        for (int rep = 0; rep < 2; ++rep) {
            auto out = eng.retrieve(QueryId{2 * i + rep}, Embedding(qs[i]), 2 * i + rep);
            EXPECT_FALSE(out.accepted);
            EXPECT_EQ(out.docs, corpus_.topk(qs[i], 10));
        }
    }
}

TEST_F(EngineTest, CacheMutatesIffReject) {
    SpeculativeRetriever eng(corpus_, config(0.3), LatencyConfig{});
    auto base = random_units(73, 20, kDim);
    std::mt19937_64 gen(74);
    std::size_t accepts = 0;
    std::size_t rejects = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        // Perturbed repeats of a few base queries yield a mix of outcomes.
        std::vector<float> q = base[gen() % base.size()];
        auto noise = testing::random_unit(gen, kDim);
        for (std::size_t j = 0; j < kDim; ++j) q[j] += 0.3F * noise[j];
        auto e = normalize(Embedding(q));
        const std::string before = dump_of(eng.cache());
        auto out = eng.retrieve(QueryId{i}, e, i);
        const std::string after = dump_of(eng.cache());
        if (out.accepted) {
            ++accepts;
            EXPECT_EQ(before, after);
            // Soundness: some cached entry overlaps the probe by more than tau.
            auto table = score_homology(out.docs, eng.cache(), 10);
            ASSERT_NE(table.best(), nullptr);
            EXPECT_GT(table.best()->score, 0.3);
        } else {
            ++rejects;
            EXPECT_NE(before, after);
            EXPECT_EQ(out.docs, corpus_.topk(e, 10));
        }
        ASSERT_FALSE(eng.cache().check_integrity().has_value());
    }
    EXPECT_GT(accepts, 0U);
    EXPECT_GT(rejects, 0U);
}

TEST_F(EngineTest, EarlyExitAgreesOnDecision) {
    std::mt19937_64 gen(80);
    auto qs = random_units(81, 40, kDim);
    for (int trial = 0; trial < 200; ++trial) {
        QueryCache cache(40, kDim);
        for (std::uint64_t q = 0; q < 40; ++q) {
            std::set<DocId> ids;
            while (ids.size() < 10) ids.insert(DocId{gen() % 30});
            RankedHits h;
            for (auto id : ids) h.push_back({id, 0.0F});
            cache.insert(QueryId{q}, Embedding(qs[q]), h, corpus_);
        }
        std::set<DocId> ids;
        while (ids.size() < 10) ids.insert(DocId{gen() % 30});
        RankedHits draft;
        for (auto id : ids) draft.push_back({id, 0.0F});
        for (double tau : {0.1, 0.2, 0.3, 0.5, 0.7}) {
            const auto full = validate(score_homology(draft, cache, 10), tau);
            const auto early = validate_early_exit(draft, cache, 10, tau);
            EXPECT_EQ(full.accepted, early.accepted);
            if (early.accepted) {
                EXPECT_GT(early.score, tau);
            }
        }
    }
}

TEST_F(EngineTest, AcceptedSetShrinksAsTauRises) {
    // Same cache state for every tau; drafts scored against a frozen snapshot.
    SpeculativeRetriever eng(corpus_, config(0.2), LatencyConfig{});
    auto qs = random_units(82, 40, kDim);
    for (std::size_t i = 0; i < qs.size(); ++i) eng.warm(QueryId{i}, Embedding(qs[i]));
    auto probes = random_units(83, 200, kDim);
    std::vector<std::set<std::size_t>> accepted;
    for (double tau : {0.0, 0.1, 0.2, 0.3, 0.5, 0.8, 1.0}) {
        std::set<std::size_t> acc;
        for (std::size_t i = 0; i < probes.size(); ++i) {
            auto d = eng.build_draft(probes[i]);
            if (validate(score_homology(d.hits, eng.cache(), 10), tau).accepted) acc.insert(i);
        }
        accepted.push_back(acc);
    }
    for (std::size_t t = 1; t < accepted.size(); ++t)
        EXPECT_TRUE(std::includes(accepted[t - 1].begin(), accepted[t - 1].end(), accepted[t].begin(),
                                  accepted[t].end()));
    EXPECT_TRUE(accepted.back().empty());
}

TEST_F(EngineTest, ConcurrentRetrieveKeepsCacheConsistent) {
    auto cfg = config(0.2);
    cfg.h_max = 30;
    SpeculativeRetriever eng(corpus_, cfg, LatencyConfig{});
    auto qs = random_units(84, 40, kDim);
    std::vector<std::thread> threads;
    std::atomic<int> bad{0};
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] {
            for (std::uint64_t i = 0; i < 100; ++i) {
                const auto& q = qs[(i * 7 + t) % qs.size()];
                auto out = eng.retrieve(QueryId{t * 1000 + i}, Embedding(q), t * 1000 + i);
                if (!out.accepted && out.docs != corpus_.topk(q, 10)) ++bad;
                if (out.docs.empty()) ++bad;
            }
        });
    }
    for (auto& th : threads) th.join();
    EXPECT_EQ(bad.load(), 0);
    EXPECT_LE(eng.cache().size(), 30U);
    EXPECT_FALSE(eng.cache().check_integrity().has_value());
}

TEST(EngineConfigTest, Validation) {
    EngineConfig c;
    EXPECT_NO_THROW(c.validate());
    c.tau = 1.5;
    EXPECT_THROW(c.validate(), ConfigError);
    c = {};
    c.k = 0;
    EXPECT_THROW(c.validate(), ConfigError);
    c = {};
    c.n_probe = 300;
    EXPECT_THROW(c.validate(), ConfigError);
}

}  // namespace
}  // namespace specret
