// Copyright 2026 The Specret Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace specret {

/// Opaque 64-bit identifier, distinct per namespace tag.
template <typename Tag>
struct StrongId {
    std::uint64_t value = 0;

    constexpr StrongId() = default;
    constexpr explicit StrongId(std::uint64_t v) : value(v) {}

    friend constexpr auto operator<=>(StrongId, StrongId) = default;

    friend std::ostream& operator<<(std::ostream& os, StrongId id) {
        return os << id.value;
    }
};

using DocId = StrongId<struct DocIdTag>;
using QueryId = StrongId<struct QueryIdTag>;
using EntityId = StrongId<struct EntityIdTag>;
using AttrId = StrongId<struct AttrIdTag>;

}  // namespace specret

template <typename Tag>
struct std::hash<specret::StrongId<Tag>> {
    std::size_t operator()(specret::StrongId<Tag> id) const noexcept {
        return std::hash<std::uint64_t>{}(id.value);
    }
};
