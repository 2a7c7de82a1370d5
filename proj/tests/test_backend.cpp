// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "specret/backend/full_backend.hpp"
#include "specret/backend/latency.hpp"
#include "specret/core/errors.hpp"
#include "specret/engine/engine.hpp"
#include "test_util.hpp"

namespace specret {
namespace {

using testing::make_flat;
using testing::random_units;

TEST(Latency, DefaultRanges) {
    LatencyConfig c;
    EXPECT_DOUBLE_EQ(c.edge.lo, 0.01);
    EXPECT_DOUBLE_EQ(c.edge.hi, 0.05);
    EXPECT_DOUBLE_EQ(c.cloud.lo, 0.1);
    EXPECT_DOUBLE_EQ(c.cloud.hi, 0.2);
}

TEST(Latency, DegenerateRangeIsExact) {
    LatencyConfig c;
    c.edge = {0.05, 0.05};
    LatencyModel m(c);
    RngStream r = m.stream(Stage::Edge, 0);
    const ScanCost cost{1000, 64, 0.0};
    EXPECT_EQ(sample_stage_latency(m, Stage::Edge, r, cost), 0.05 + m.compute_cost(cost));
    EXPECT_DOUBLE_EQ(m.compute_cost(cost), 1000 * 64 * 1e-9);
    EXPECT_EQ(r.draws(), 1U);
}

TEST(Latency, UniformMean) {
    LatencyModel m(LatencyConfig{});
    RngStream r = seeded_rng(77);
    double s = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double x = sample_stage_latency(m, Stage::Cloud, r);
        ASSERT_GE(x, 0.1);
        ASSERT_LE(x, 0.2);
        s += x;
    }
    EXPECT_NEAR(s / n, 0.15, 0.002);
}

TEST(Latency, StreamsDependOnlyOnStageAndOrdinal) {
    LatencyModel m(LatencyConfig{});
    RngStream a = m.stream(Stage::Cloud, 12);
    RngStream b = m.stream(Stage::Cloud, 12);
    RngStream e = m.stream(Stage::Edge, 12);
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, e.next_u64());
}

TEST(Latency, InvalidConfig) {
    LatencyConfig c;
    c.cloud = {0.3, 0.2};
    EXPECT_THROW(LatencyModel{c}, ConfigError);
    c = {};
    c.edge = {-0.1, 0.2};
    EXPECT_THROW(LatencyModel{c}, ConfigError);
}

TEST(FullBackendTest, DeterministicAndExact) {
    auto corpus = make_flat(random_units(1, 300, 32));
    LatencyModel m(LatencyConfig{});
    FullBackend b(&corpus, m);
    for (const auto& q : random_units(2, 20, 32)) {
        auto x = b.retrieve(q, 10, 5);
        auto y = b.retrieve(q, 10, 5);
        EXPECT_EQ(x.hits, y.hits);
        EXPECT_EQ(x.cloud_seconds, y.cloud_seconds);
        EXPECT_EQ(x.hits, corpus.topk(q, 10));
        const double compute = 300.0 * 32 * 1e-9;
        EXPECT_GE(x.cloud_seconds, 0.1 + compute);
        EXPECT_LE(x.cloud_seconds, 0.2 + compute);
        EXPECT_EQ(x.rng_draws, 1U);
    }
}

TEST(FullBackendTest, NotReady) {
    LatencyModel m(LatencyConfig{});
    FullBackend none(nullptr, m);
    EXPECT_FALSE(none.ready());
    EXPECT_THROW((void)none.retrieve(std::vector<float>{1.0F}, 1, 0), NotReadyError);
    FlatIndex empty(4);
    FullBackend hollow(&empty, m);
    EXPECT_THROW((void)hollow.retrieve(std::vector<float>{1, 0, 0, 0}, 1, 0), NotReadyError);
}

TEST(Accounting, AcceptedPathHasNoCloudDraws) {
    auto corpus = make_flat(random_units(3, 400, 16));
    EngineConfig cfg;
    cfg.n_buckets = 8;
    cfg.n_probe = 2;
    SpeculativeRetriever eng(corpus, cfg, LatencyConfig{});
    auto qs = random_units(4, 30, 16);
    std::uint64_t ord = 0;
    std::size_t accepted = 0;
    for (int round = 0; round < 2; ++round) {
        for (std::size_t i = 0; i < qs.size(); ++i) {
            auto out = eng.retrieve(QueryId{ord}, Embedding(qs[i]), ord);
            ++ord;
            EXPECT_NEAR(out.latency.total_seconds,
                        out.latency.edge_seconds + out.latency.cloud_seconds, 1e-12);
            if (out.accepted) {
                ++accepted;
                EXPECT_EQ(out.cloud_rng_draws, 0U);
                EXPECT_EQ(out.latency.cloud_seconds, 0.0);
            } else {
                EXPECT_EQ(out.cloud_rng_draws, 1U);
            }
        }
    }
    EXPECT_GE(accepted, qs.size());
}

}  // namespace
}  // namespace specret
