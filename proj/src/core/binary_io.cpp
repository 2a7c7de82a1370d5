// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#include "specret/core/binary_io.hpp"

namespace specret::binio {

void put_f32_array(std::ostream& out, std::span<const float> values) {
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(values.data()),
                  static_cast<std::streamsize>(values.size_bytes()));
    } else {
        for (float f : values) put_f32(out, f);
    }
}

void get_f32_array(std::istream& in, std::span<float> values) {
    if constexpr (std::endian::native == std::endian::little) {
        if (!in.read(reinterpret_cast<char*>(values.data()),
                     static_cast<std::streamsize>(values.size_bytes()))) {
            throw DataError("unexpected end of binary stream");
        }
    } else {
        for (float& f : values) f = get_f32(in);
    }
}

}  // namespace specret::binio
