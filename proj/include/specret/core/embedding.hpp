// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace specret {

/// Similarity score. Dot products accumulate in double and round to float here.
using SimScore = float;

/// Tolerance on |norm - 1| for a vector to count as normalized.
inline constexpr double kUnitNormTolerance = 1e-5;

/// Dense float32 vector. All components are finite and dim() > 0.
class Embedding {
  public:
    Embedding() = default;
    explicit Embedding(std::vector<float> values);
    Embedding(std::initializer_list<float> values);

    [[nodiscard]] std::size_t dim() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] std::span<const float> values() const noexcept { return values_; }
    [[nodiscard]] const float* data() const noexcept { return values_.data(); }
    [[nodiscard]] float operator[](std::size_t i) const noexcept { return values_[i]; }

    [[nodiscard]] double norm() const noexcept;
    [[nodiscard]] bool is_normalized(double tol = kUnitNormTolerance) const noexcept;

    friend bool operator==(const Embedding&, const Embedding&) = default;

  private:
    std::vector<float> values_;
};

/// Exact dot product with 64-bit accumulation. Throws DimError on mismatch.
SimScore inner_product(std::span<const float> a, std::span<const float> b);
SimScore inner_product(const Embedding& a, const Embedding& b);

/// Unit-norm copy of v. Throws DegenerateVectorError when norm(v) <= 1e-12.
Embedding normalize(const Embedding& v);
std::vector<float> normalize(std::span<const float> v);

/// Throws DataError if any component is NaN or infinite.
void check_finite(std::span<const float> v);

}  // namespace specret
