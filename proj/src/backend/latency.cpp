// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "specret/backend/latency.hpp"

#include <chrono>
#include <cmath>
#include <thread>

#include "specret/core/errors.hpp"

namespace specret {

namespace {

constexpr std::uint64_t kEdgeTag = 0x45444745ull;   // "EDGE"
constexpr std::uint64_t kCloudTag = 0x434C4F44ull;  // "CLOD"

void check_range(const LatencyRange& r, const char* name) {
    if (!(std::isfinite(r.lo) && std::isfinite(r.hi)) || r.lo < 0.0 || r.lo > r.hi) {
        throw ConfigError(std::string(name) + " latency range must satisfy 0 <= lo <= hi");
    }
}

}  // namespace

void LatencyConfig::validate() const {
    check_range(edge, "edge");
    check_range(cloud, "cloud");
    if (!(seconds_per_mac >= 0.0)) {
        throw ConfigError("seconds_per_mac must be non-negative");
    }
}

LatencyModel::LatencyModel(LatencyConfig config) : config_(config) {
    config_.validate();
}

RngStream LatencyModel::stream(Stage stage, std::uint64_t ordinal) const {
    const std::uint64_t tag = stage == Stage::Edge ? kEdgeTag : kCloudTag;
    return RngStream::derive(mix_seed(config_.seed ^ tag), ordinal);
}

double LatencyModel::compute_cost(const ScanCost& cost) const noexcept {
    if (config_.compute == ComputeCostMode::Measured) {
        return cost.measured_seconds;
    }
    return static_cast<double>(cost.vectors) * static_cast<double>(cost.dim) *
           config_.seconds_per_mac;
}

double LatencyModel::sample(Stage stage, RngStream& rng, const ScanCost& cost) const {
    const LatencyRange& r = stage == Stage::Edge ? config_.edge : config_.cloud;
    return rng.uniform(r.lo, r.hi) + compute_cost(cost);
}

void LatencyModel::charge(double seconds) const {
    if (config_.real_sleep && seconds > 0.0) {
        std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
    }
}

double sample_stage_latency(const LatencyModel& model, Stage stage, RngStream& rng,
                            const ScanCost& cost) {
    return model.sample(stage, rng, cost);
}

}  // namespace specret
