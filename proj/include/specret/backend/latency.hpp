// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

#include "specret/core/rng.hpp"

namespace specret {

/// Closed interval of network delay, in seconds. Sampled uniformly.
struct LatencyRange {
    double lo = 0.0;
    double hi = 0.0;
};

enum class Stage { Edge, Cloud };

enum class ComputeCostMode {
    /// Deterministic cost proportional to the number of scored vector components.
    Modeled,
    /// Wall-clock time of the search call. Not reproducible across runs.
    Measured,
};

struct LatencyConfig {
    LatencyRange edge{0.01, 0.05};
    LatencyRange cloud{0.1, 0.2};
    ComputeCostMode compute = ComputeCostMode::Modeled;
    double seconds_per_mac = 1e-9;
    /// Sleep for the charged time instead of only accounting for it.
    bool real_sleep = false;
    std::uint64_t seed = 42;

    /// Throws ConfigError on negative or inverted ranges.
    void validate() const;
};

/// What a search call touched, for compute-cost accounting.
struct ScanCost {
    std::size_t vectors = 0;
    std::size_t dim = 0;
    double measured_seconds = 0.0;

    ScanCost& operator+=(const ScanCost& o) {
        vectors += o.vectors;
        measured_seconds += o.measured_seconds;
        if (dim == 0) dim = o.dim;
        return *this;
    }
};

struct LatencyBreakdown {
    double edge_seconds = 0.0;
    double cloud_seconds = 0.0;
    double total_seconds = 0.0;
};

/// Virtual-clock latency model for the edge (speculative) and cloud (full
/// database) stages. Each query ordinal gets its own sub-stream per stage, so
/// the samples do not depend on call order or concurrency.
class LatencyModel {
  public:
    explicit LatencyModel(LatencyConfig config);

    [[nodiscard]] RngStream stream(Stage stage, std::uint64_t ordinal) const;

    [[nodiscard]] double compute_cost(const ScanCost& cost) const noexcept;

    /// Uniform draw from the stage range plus compute cost. Consumes one draw.
    double sample(Stage stage, RngStream& rng, const ScanCost& cost) const;

    /// Sleeps for `seconds` when real_sleep is enabled.
    void charge(double seconds) const;

    [[nodiscard]] const LatencyConfig& config() const noexcept { return config_; }

  private:
    LatencyConfig config_;
};

double sample_stage_latency(const LatencyModel& model, Stage stage, RngStream& rng,
                            const ScanCost& cost = {});

}  // namespace specret
