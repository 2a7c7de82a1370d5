// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "kernels.hpp"

namespace specret::simd::detail {

double dot_scalar(const float* a, const float* b, std::size_t n) {
    double lane[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    const std::size_t n8 = n & ~std::size_t{7};
    std::size_t i = 0;
    for (; i < n8; i += 8) {
        for (std::size_t j = 0; j < 8; ++j) {
            lane[j] += static_cast<double>(a[i + j]) * static_cast<double>(b[i + j]);
        }
    }
    const double s0 = lane[0] + lane[4];
    const double s1 = lane[1] + lane[5];
    const double s2 = lane[2] + lane[6];
    const double s3 = lane[3] + lane[7];
    double sum = (s0 + s2) + (s1 + s3);
    for (; i < n; ++i) {
        sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    }
    return sum;
}

void dot_rows_scalar(const float* q, const float* rows, std::size_t n_rows, std::size_t dim,
                     float* out) {
    for (std::size_t r = 0; r < n_rows; ++r) {
        out[r] = static_cast<float>(dot_scalar(q, rows + r * dim, dim));
    }
}

}  // namespace specret::simd::detail
