// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include <arm_neon.h>

#include "kernels.hpp"

namespace specret::simd::detail {

namespace {

inline double dot_neon_impl(const float* a, const float* b, std::size_t n) {
    float64x2_t l01 = vdupq_n_f64(0.0);
    float64x2_t l23 = vdupq_n_f64(0.0);
    float64x2_t l45 = vdupq_n_f64(0.0);
    float64x2_t l67 = vdupq_n_f64(0.0);
    const std::size_t n8 = n & ~std::size_t{7};
    std::size_t i = 0;
    for (; i < n8; i += 8) {
        const float32x4_t a0 = vld1q_f32(a + i);
        const float32x4_t a1 = vld1q_f32(a + i + 4);
        const float32x4_t b0 = vld1q_f32(b + i);
        const float32x4_t b1 = vld1q_f32(b + i + 4);
        l01 = vfmaq_f64(l01, vcvt_f64_f32(vget_low_f32(a0)), vcvt_f64_f32(vget_low_f32(b0)));
        l23 = vfmaq_f64(l23, vcvt_high_f64_f32(a0), vcvt_high_f64_f32(b0));
        l45 = vfmaq_f64(l45, vcvt_f64_f32(vget_low_f32(a1)), vcvt_f64_f32(vget_low_f32(b1)));
        l67 = vfmaq_f64(l67, vcvt_high_f64_f32(a1), vcvt_high_f64_f32(b1));
    }
    const float64x2_t s01 = vaddq_f64(l01, l45);
    const float64x2_t s23 = vaddq_f64(l23, l67);
    const float64x2_t pair = vaddq_f64(s01, s23);  // (s0+s2, s1+s3)
    double sum = vgetq_lane_f64(pair, 0) + vgetq_lane_f64(pair, 1);
    for (; i < n; ++i) {
        sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    }
    return sum;
}

}  // namespace

double dot_neon(const float* a, const float* b, std::size_t n) {
    return dot_neon_impl(a, b, n);
}

void dot_rows_neon(const float* q, const float* rows, std::size_t n_rows, std::size_t dim,
                   float* out) {
    for (std::size_t r = 0; r < n_rows; ++r) {
        out[r] = static_cast<float>(dot_neon_impl(q, rows + r * dim, dim));
    }
}

}  // namespace specret::simd::detail
