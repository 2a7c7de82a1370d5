// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "specret/core/embedding.hpp"

#include <cmath>
#include <string>

#include "specret/core/errors.hpp"
#include "specret/core/simd.hpp"

namespace specret {

void check_finite(std::span<const float> v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            throw DataError("non-finite embedding component at index " + std::to_string(i));
        }
    }
}

Embedding::Embedding(std::vector<float> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw DimError("embedding dimension must be positive");
    }
    check_finite(values_);
}

Embedding::Embedding(std::initializer_list<float> values)
    : Embedding(std::vector<float>(values)) {}

double Embedding::norm() const noexcept {
    return std::sqrt(simd::dot(values_.data(), values_.data(), values_.size()));
}

bool Embedding::is_normalized(double tol) const noexcept {
    return !values_.empty() && std::abs(norm() - 1.0) <= tol;
}

SimScore inner_product(std::span<const float> a, std::span<const float> b) {
    if (a.size() != b.size()) {
        throw DimError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                       std::to_string(b.size()));
    }
    return static_cast<SimScore>(simd::dot(a.data(), b.data(), a.size()));
}

SimScore inner_product(const Embedding& a, const Embedding& b) {
    return inner_product(a.values(), b.values());
}

std::vector<float> normalize(std::span<const float> v) {
    const double n = std::sqrt(simd::dot(v.data(), v.data(), v.size()));
    if (!(n > 1e-12)) {
        throw DegenerateVectorError("cannot normalize a near-zero vector");
    }
    std::vector<float> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = static_cast<float>(static_cast<double>(v[i]) / n);
    }
    return out;
}

Embedding normalize(const Embedding& v) {
    return Embedding(normalize(v.values()));
}

}  // namespace specret
