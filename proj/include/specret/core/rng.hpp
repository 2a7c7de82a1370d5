// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace specret {

/// Deterministic random stream. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; all distributions are implemented here
/// rather than through <random> distributions, which are implementation-defined.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream for (seed, ordinal), e.g. one per in-flight query.
    static RngStream derive(std::uint64_t seed, std::uint64_t ordinal);

    std::uint64_t next_u64() {
        ++draws_;
        return engine_();
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    double uniform();
    double uniform(double lo, double hi);

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    /// Standard normal via the Marsaglia polar method.
    double normal();

    /// Random unit vector of the given dimension.
    std::vector<float> unit_vector(std::size_t dim);

    /// Number of raw 64-bit draws consumed so far.
    [[nodiscard]] std::uint64_t draws() const noexcept { return draws_; }

  private:
    std::mt19937_64 engine_;
    std::uint64_t draws_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

RngStream seeded_rng(std::uint64_t seed);

/// SplitMix64 finalizer; used to derive sub-stream seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

}  // namespace specret
