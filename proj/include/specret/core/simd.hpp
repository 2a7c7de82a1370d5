// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string_view>

// Dot-product kernels with a fixed accumulation order.
//
// Every variant accumulates float products in double across eight lanes
// (lane j takes indices i with i % 8 == j over the largest multiple of 8),
// combines lanes as ((l0+l4)+(l2+l6)) + ((l1+l5)+(l3+l7)), then adds the tail
// sequentially. A float*float product is exact in double, so fused and
// unfused multiply-add agree and all variants are bitwise identical.

namespace specret::simd {

enum class KernelKind { Scalar, Avx2, Neon };

std::string_view to_string(KernelKind kind) noexcept;

using DotFn = double (*)(const float* a, const float* b, std::size_t n);
using DotRowsFn = void (*)(const float* q, const float* rows, std::size_t n_rows,
                           std::size_t dim, float* out);

struct KernelTable {
    KernelKind kind;
    DotFn dot;
    DotRowsFn dot_rows;
};

const KernelTable& scalar_kernels() noexcept;
/// nullptr when the variant was not compiled for this target.
const KernelTable* avx2_kernels() noexcept;
const KernelTable* neon_kernels() noexcept;

/// True if the variant is compiled in and supported by the running CPU.
bool is_supported(KernelKind kind) noexcept;

/// Kernels selected at first use: the best supported variant, unless the
/// SPECRET_SIMD environment variable names one (scalar, avx2, neon).
const KernelTable& active() noexcept;

/// Overrides the active variant. Throws ConfigError if unsupported.
void select(KernelKind kind);

inline double dot(const float* a, const float* b, std::size_t n) {
    return active().dot(a, b, n);
}

/// out[r] = float(dot(q, rows + r*dim, dim)) for each row.
inline void dot_rows(const float* q, const float* rows, std::size_t n_rows, std::size_t dim,
                     float* out) {
    active().dot_rows(q, rows, n_rows, dim, out);
}

}  // namespace specret::simd
