// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>

#include "specret/core/errors.hpp"

// Little-endian primitive encoding shared by the embedding and snapshot formats.

namespace specret::binio {

template <typename U>
void put_le(std::ostream& out, U v) {
    static_assert(std::is_unsigned_v<U>);
    char buf[sizeof(U)];
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    }
    out.write(buf, sizeof(U));
}

template <typename U>
U get_le(std::istream& in) {
    static_assert(std::is_unsigned_v<U>);
    unsigned char buf[sizeof(U)];
    if (!in.read(reinterpret_cast<char*>(buf), sizeof(U))) {
        throw DataError("unexpected end of binary stream");
    }
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        v |= static_cast<U>(buf[i]) << (8 * i);
    }
    return v;
}

inline void put_f32(std::ostream& out, float f) { put_le(out, std::bit_cast<std::uint32_t>(f)); }
inline float get_f32(std::istream& in) { return std::bit_cast<float>(get_le<std::uint32_t>(in)); }

inline void put_f64(std::ostream& out, double d) { put_le(out, std::bit_cast<std::uint64_t>(d)); }
inline double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

void put_f32_array(std::ostream& out, std::span<const float> values);
void get_f32_array(std::istream& in, std::span<float> values);

}  // namespace specret::binio
