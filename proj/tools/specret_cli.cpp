// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

// specret: workload generation, benchmarking and report conversion.
//
// Exit codes: 0 success, 2 configuration error, 3 data error, 4 runtime error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "specret/bench/harness.hpp"
#include "specret/bench/report.hpp"
#include "specret/core/errors.hpp"
#include "specret/core/simd.hpp"
#include "specret/workload/generator.hpp"
#include "specret/workload/workload_io.hpp"

namespace fs = std::filesystem;
using namespace specret;

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kDataError = 3, kRuntimeError = 4 };

struct GenArgs {
    std::string config;
    std::string out;
};

struct BenchArgs {
    std::string corpus;
    std::string queries;
    std::string method = "has";
    std::string report;
    bool trace = false;
    bool no_fuzzy_validation = false;
    bool no_fuzzy_enhancement = false;
    bool early_exit = false;
    bool measured_compute = false;
    bool real_sleep = false;
    BenchConfig cfg;
};

struct ReportArgs {
    std::string in;
    std::string format = "json";
    std::string out;
};

int run_gen(const GenArgs& args) {
    std::ifstream in(args.config);
    if (!in) throw ConfigError("cannot open config file " + args.config);
    const GenConfig cfg = parse_gen_config(in);
    const Workload w = gen_corpus(cfg);
    const auto queries = gen_queries(cfg, w.entities, w.attr_vectors);

    const fs::path out(args.out);
    save_corpus(out, w.docs);
    save_queries(out / "queries.hsem", queries);
    std::ofstream cfg_out(out / "gen.cfg", std::ios::trunc);
    write_gen_config(cfg_out, cfg);
    if (!cfg_out) throw IoError("failed writing " + (out / "gen.cfg").string());

    std::cout << "wrote " << w.docs.size() << " docs and " << queries.size() << " queries to "
              << out.string() << " (homologous prevalence "
              << format_double(homologous_prevalence(queries)) << ")\n";
    return kOk;
}

void print_summary(const MetricsReport& r) {
    auto show = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("n/a"); };
    std::cout << "method=" << r.method << " queries=" << r.n_queries
              << " avg_latency_s=" << format_double(r.avg_latency_s)
              << " doc_hit_rate=" << format_double(r.doc_hit_rate) << " dar=" << format_double(r.dar)
              << " car=" << show(r.car) << " golden_car=" << show(r.golden_car)
              << " l_at_da=" << show(r.l_at_da) << " l_at_dr=" << show(r.l_at_dr)
              << " cache_mem_bytes=" << r.cache_mem_bytes << '\n';
}

int run_bench(BenchArgs args) {
    args.cfg.method = parse_method(args.method);
    args.cfg.engine.fuzzy_validation = !args.no_fuzzy_validation;
    args.cfg.engine.fuzzy_enhancement = !args.no_fuzzy_enhancement;
    args.cfg.engine.scoring = args.early_exit ? ScoringMode::EarlyExit : ScoringMode::Full;
    args.cfg.latency.compute = args.measured_compute ? ComputeCostMode::Measured : ComputeCostMode::Modeled;
    args.cfg.latency.real_sleep = args.real_sleep;
    args.cfg.latency.seed = args.cfg.engine.seed;
    args.cfg.keep_trace = args.trace;
    args.cfg.engine.validate();
    args.cfg.latency.validate();

    const auto docs = load_corpus(args.corpus);
    const auto queries = load_queries(args.queries);
    const FlatIndex corpus = build_flat_index(docs);

    const MetricsReport report = run_benchmark(docs, corpus, queries, args.cfg);
    print_summary(report);
    if (!args.report.empty()) {
        emit_report(args.report, report, ReportFormat::Json, args.trace);
    }
    return kOk;
}

int run_report(const ReportArgs& args) {
    const ReportFormat format = parse_report_format(args.format);
    std::ifstream in(args.in);
    if (!in) throw IoError("cannot open report " + args.in);

    MetricsReport report;
    bool has_trace = false;
    if (in.peek() == '{') {
        report = parse_json_report(in);
        has_trace = !report.trace.empty() || report.n_queries == 0;
    } else {
        // A CSV trace: rebuild aggregates from the rows.
        report = aggregate(parse_csv_trace(in));
        report.method = "trace";
        report.trace.clear();
        in.clear();
        in.seekg(0);
        report.trace = parse_csv_trace(in);
        has_trace = true;
    }
    if (format == ReportFormat::Csv && !has_trace) {
        throw DataError("report has no trace; rerun bench with --trace to export CSV");
    }

    std::ostringstream buf;
    if (format == ReportFormat::Json) {
        emit_json(buf, report, has_trace);
    } else {
        emit_csv(buf, report);
    }
    if (args.out.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream out(args.out, std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + args.out);
        out << buf.str();
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Speculative retrieval engine and benchmark harness"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic entity/attribute workload");
    gen_cmd->add_option("--config", gen.config, "key=value workload config file")->required();
    gen_cmd->add_option("--out", gen.out, "Output directory")->required();

    BenchArgs bench;
    auto& ec = bench.cfg.engine;
    auto* bench_cmd = app.add_subcommand("bench", "Replay a query stream and report metrics");
    bench_cmd->add_option("--corpus", bench.corpus, "Corpus directory")->required();
    bench_cmd->add_option("--queries", bench.queries, "Query embedding file (.hsem)")->required();
    bench_cmd->add_option("--method", bench.method, "full | reuse | has")
        ->check(CLI::IsMember({"full", "reuse", "has"}));
    bench_cmd->add_option("--k", ec.k, "Result size")->default_val(10);
    bench_cmd->add_option("--tau", ec.tau, "Homology threshold")->default_val(0.2);
    bench_cmd->add_option("--h-max", ec.h_max, "Cache capacity (queries)")->default_val(5000);
    bench_cmd->add_option("--n-buckets", ec.n_buckets, "Fuzzy channel buckets")->default_val(256);
    bench_cmd->add_option("--n-probe", ec.n_probe, "Fuzzy channel probed buckets")->default_val(8);
    bench_cmd->add_option("--subset-fraction", ec.subset_fraction, "Corpus fraction loaded by the fuzzy channel")
        ->default_val(1.0);
    bench_cmd->add_option("--seed", ec.seed, "Seed for index build and latency sampling")->default_val(42);
    bench_cmd->add_option("--report", bench.report, "Write the JSON report here");
    bench_cmd->add_flag("--trace", bench.trace, "Include per-query trace rows in the report");
    bench_cmd->add_option("--reuse-threshold", bench.cfg.reuse_threshold, "Cosine threshold for --method reuse")
        ->default_val(0.95);
    bench_cmd->add_option("--prefill", bench.cfg.prefill, "Random queries cached before the stream")
        ->default_val(0);
    bench_cmd->add_flag("--no-fuzzy-validation", bench.no_fuzzy_validation,
                        "Validate against the cache channel only");
    bench_cmd->add_flag("--no-fuzzy-enhancement", bench.no_fuzzy_enhancement,
                        "Return cache-channel docs only on acceptance");
    bench_cmd->add_flag("--early-exit", bench.early_exit, "Stop scoring at the first match");
    bench_cmd->add_flag("--measured-compute", bench.measured_compute,
                        "Charge measured search time instead of the modeled cost");
    bench_cmd->add_flag("--real-sleep", bench.real_sleep, "Sleep for charged latencies");

    ReportArgs report;
    auto* report_cmd = app.add_subcommand("report", "Convert a report (JSON or CSV trace)");
    report_cmd->add_option("--in", report.in, "Report file")->required();
    report_cmd->add_option("--format", report.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    report_cmd->add_option("--out", report.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        if (*gen_cmd) return run_gen(gen);
        if (*bench_cmd) return run_bench(bench);
        if (*report_cmd) return run_report(report);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DimError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kDataError;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kDataError;
    } catch (const BuildError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kOk;
}
