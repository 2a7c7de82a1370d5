// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

// Built with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "kernels.hpp"

namespace specret::simd::detail {

namespace {

inline double dot_avx2_impl(const float* a, const float* b, std::size_t n) {
    __m256d lo = _mm256_setzero_pd();  // lanes 0..3
    __m256d hi = _mm256_setzero_pd();  // lanes 4..7
    const std::size_t n8 = n & ~std::size_t{7};
    std::size_t i = 0;
    for (; i < n8; i += 8) {
        const __m256 va = _mm256_loadu_ps(a + i);
        const __m256 vb = _mm256_loadu_ps(b + i);
        const __m256d a_lo = _mm256_cvtps_pd(_mm256_castps256_ps128(va));
        const __m256d a_hi = _mm256_cvtps_pd(_mm256_extractf128_ps(va, 1));
        const __m256d b_lo = _mm256_cvtps_pd(_mm256_castps256_ps128(vb));
        const __m256d b_hi = _mm256_cvtps_pd(_mm256_extractf128_ps(vb, 1));
        lo = _mm256_fmadd_pd(a_lo, b_lo, lo);
        hi = _mm256_fmadd_pd(a_hi, b_hi, hi);
    }
    const __m256d s = _mm256_add_pd(lo, hi);                    // s0..s3
    const __m128d pair = _mm_add_pd(_mm256_castpd256_pd128(s),  // (s0+s2, s1+s3)
                                    _mm256_extractf128_pd(s, 1));
    double sum = _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
    for (; i < n; ++i) {
        sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    }
    return sum;
}

}  // namespace

double dot_avx2(const float* a, const float* b, std::size_t n) {
    return dot_avx2_impl(a, b, n);
}

void dot_rows_avx2(const float* q, const float* rows, std::size_t n_rows, std::size_t dim,
                   float* out) {
    for (std::size_t r = 0; r < n_rows; ++r) {
        out[r] = static_cast<float>(dot_avx2_impl(q, rows + r * dim, dim));
    }
}

}  // namespace specret::simd::detail
