// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "specret/core/rng.hpp"

#include <cmath>

#include "specret/core/embedding.hpp"

namespace specret {

std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

RngStream RngStream::derive(std::uint64_t seed, std::uint64_t ordinal) {
    return RngStream(mix_seed(mix_seed(seed) ^ (ordinal * 0xD1B54A32D192ED03ull)));
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::uint64_t RngStream::below(std::uint64_t bound) {
    // Rejection sampling on the top of the range keeps the result unbiased.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = next_u64();
    while (x >= limit) {
        x = next_u64();
    }
    return x % bound;
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = uniform(-1.0, 1.0);
        v = uniform(-1.0, 1.0);
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * f;
    has_spare_ = true;
    return u * f;
}

std::vector<float> RngStream::unit_vector(std::size_t dim) {
    std::vector<float> v(dim);
    for (;;) {
        for (auto& x : v) {
            x = static_cast<float>(normal());
        }
        double sq = 0.0;
        for (float x : v) {
            sq += static_cast<double>(x) * x;
        }
        if (sq > 1e-12) {
            return normalize(std::span<const float>(v));
        }
    }
}

RngStream seeded_rng(std::uint64_t seed) {
    return RngStream(seed);
}

}  // namespace specret
