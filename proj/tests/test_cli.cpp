// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "specret/bench/report.hpp"
#include "test_util.hpp"

namespace specret {
namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
    const std::string cmd = std::string(SPECRET_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = testing::temp_dir("cli");
        std::ofstream cfg(dir_ / "gen.cfg");
        cfg << "n_entities = 30\ndocs_per_entity = 8\nn_queries = 200\nseed = 3\n";
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string bench_args(const std::string& extra) const {
        return "bench --corpus " + (dir_ / "wl").string() + " --queries " +
               (dir_ / "wl" / "queries.hsem").string() + " --n-buckets 16 --n-probe 2 " + extra;
    }

    fs::path dir_;
};

TEST_F(CliTest, GenBenchReport) {
    ASSERT_EQ(run("gen --config " + (dir_ / "gen.cfg").string() + " --out " + (dir_ / "wl").string()), 0);
    EXPECT_TRUE(fs::exists(dir_ / "wl" / "corpus.hsem"));
    EXPECT_TRUE(fs::exists(dir_ / "wl" / "corpus.meta.tsv"));
    EXPECT_TRUE(fs::exists(dir_ / "wl" / "queries.meta.tsv"));

    const auto a = dir_ / "a.json";
    const auto b = dir_ / "b.json";
    ASSERT_EQ(run(bench_args("--method has --trace --report " + a.string())), 0);
    ASSERT_EQ(run(bench_args("--method has --trace --report " + b.string())), 0);
    EXPECT_EQ(slurp(a), slurp(b));

    const auto csv = dir_ / "t.csv";
    ASSERT_EQ(run("report --in " + a.string() + " --format csv --out " + csv.string()), 0);
    std::ifstream in(csv);
    auto rows = parse_csv_trace(in);
    EXPECT_EQ(rows.size(), 200U);

    EXPECT_EQ(run(bench_args("--method full")), 0);
    EXPECT_EQ(run(bench_args("--method reuse")), 0);
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
    EXPECT_EQ(run("bench"), 2);
    EXPECT_EQ(run("frobnicate"), 2);
    std::ofstream(dir_ / "bad.cfg") << "colour = blue\n";
    EXPECT_EQ(run("gen --config " + (dir_ / "bad.cfg").string() + " --out " + (dir_ / "x").string()), 2);
    ASSERT_EQ(run("gen --config " + (dir_ / "gen.cfg").string() + " --out " + (dir_ / "wl").string()), 0);
    EXPECT_EQ(run(bench_args("--tau 1.5")), 2);
    EXPECT_EQ(run(bench_args("--n-buckets 100000 --n-probe 2")), 2);
}

TEST_F(CliTest, DataErrorsExitThree) {
    ASSERT_EQ(run("gen --config " + (dir_ / "gen.cfg").string() + " --out " + (dir_ / "wl").string()), 0);
    std::ofstream(dir_ / "wl" / "corpus.hsem", std::ios::trunc) << "garbage";
    EXPECT_EQ(run(bench_args("--method full")), 3);
    std::ofstream(dir_ / "junk.json") << "{not json";
    EXPECT_EQ(run("report --in " + (dir_ / "junk.json").string() + " --format json"), 3);
}

TEST_F(CliTest, RuntimeErrorsExitFour) {
    ASSERT_EQ(run("gen --config " + (dir_ / "gen.cfg").string() + " --out " + (dir_ / "wl").string()), 0);
    EXPECT_EQ(run(bench_args("--method full --report /nonexistent-dir/r.json")), 4);
}

}  // namespace
}  // namespace specret
