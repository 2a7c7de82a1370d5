// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels.hpp"
#include "specret/core/errors.hpp"
#include "specret/core/simd.hpp"

namespace specret::simd {

namespace {

constexpr KernelTable kScalar{KernelKind::Scalar, &detail::dot_scalar, &detail::dot_rows_scalar};

#if defined(SPECRET_HAVE_AVX2)
constexpr KernelTable kAvx2{KernelKind::Avx2, &detail::dot_avx2, &detail::dot_rows_avx2};
#endif

#if defined(SPECRET_HAVE_NEON)
constexpr KernelTable kNeon{KernelKind::Neon, &detail::dot_neon, &detail::dot_rows_neon};
#endif

const KernelTable* table_for(KernelKind kind) noexcept {
    switch (kind) {
        case KernelKind::Scalar:
            return &kScalar;
        case KernelKind::Avx2:
            return avx2_kernels();
        case KernelKind::Neon:
            return neon_kernels();
    }
    return nullptr;
}

const KernelTable* pick_default() noexcept {
    if (const char* env = std::getenv("SPECRET_SIMD")) {
        const std::string want(env);
        if (want == "scalar") return &kScalar;
        if (want == "avx2" && is_supported(KernelKind::Avx2)) return avx2_kernels();
        if (want == "neon" && is_supported(KernelKind::Neon)) return neon_kernels();
    }
    if (is_supported(KernelKind::Avx2)) return avx2_kernels();
    if (is_supported(KernelKind::Neon)) return neon_kernels();
    return &kScalar;
}

std::atomic<const KernelTable*>& current() noexcept {
    static std::atomic<const KernelTable*> table{pick_default()};
    return table;
}

}  // namespace

std::string_view to_string(KernelKind kind) noexcept {
    switch (kind) {
        case KernelKind::Scalar:
            return "scalar";
        case KernelKind::Avx2:
            return "avx2";
        case KernelKind::Neon:
            return "neon";
    }
    return "unknown";
}

const KernelTable& scalar_kernels() noexcept { return kScalar; }

const KernelTable* avx2_kernels() noexcept {
#if defined(SPECRET_HAVE_AVX2)
    return &kAvx2;
#else
    return nullptr;
#endif
}

const KernelTable* neon_kernels() noexcept {
#if defined(SPECRET_HAVE_NEON)
    return &kNeon;
#else
    return nullptr;
#endif
}

bool is_supported(KernelKind kind) noexcept {
    switch (kind) {
        case KernelKind::Scalar:
            return true;
        case KernelKind::Avx2:
#if defined(SPECRET_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case KernelKind::Neon:
#if defined(SPECRET_HAVE_NEON)
            return true;  // mandatory on AArch64
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

void select(KernelKind kind) {
    if (!is_supported(kind)) {
        throw ConfigError("SIMD kernel '" + std::string(to_string(kind)) +
                          "' is not available on this machine");
    }
    current().store(table_for(kind), std::memory_order_release);
}

}  // namespace specret::simd
