// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

namespace specret::simd::detail {

double dot_scalar(const float* a, const float* b, std::size_t n);
void dot_rows_scalar(const float* q, const float* rows, std::size_t n_rows, std::size_t dim,
                     float* out);

#if defined(SPECRET_HAVE_AVX2)
double dot_avx2(const float* a, const float* b, std::size_t n);
void dot_rows_avx2(const float* q, const float* rows, std::size_t n_rows, std::size_t dim,
                   float* out);
#endif

#if defined(SPECRET_HAVE_NEON)
double dot_neon(const float* a, const float* b, std::size_t n);
void dot_rows_neon(const float* q, const float* rows, std::size_t n_rows, std::size_t dim,
                   float* out);
#endif

}  // namespace specret::simd::detail
