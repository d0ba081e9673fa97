/**
 * Copyright (c) 2026 The Strata Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "strata/core/types.hpp"
#include "strata/store/block_store.hpp"

#include <vector>

namespace strata::store {

enum class NodeKind : std::uint8_t { Leaf = 0, Internal = 1 };

/// Per-child entry of an internal node. ref == kNullBlock marks an empty subtree.
struct ChildSlot {
    BlockRef ref = kNullBlock;
    VersionId version = 0;
    Aggregate agg;

    bool present() const noexcept { return ref != kNullBlock; }
};

/// Decoded tree node. A node covers [start, start + 2^span_shift).
///
/// Internal nodes split their span into 2^(span_shift - child_shift) equal
/// children, where child_shift = max(span_shift - 6, 0): 64 children
/// everywhere except just above the 1 ns level.
struct Node {
    NodeKind kind = NodeKind::Leaf;
    int span_shift = kTimeBits;
    Timestamp start = 0;
    VersionId version = 0;
    std::vector<RawPoint> points;     // leaf only, sorted by time
    std::vector<ChildSlot> children;  // internal only, one slot per child

    bool is_leaf() const noexcept { return kind == NodeKind::Leaf; }
    Timestamp end() const noexcept { return start + window_width(span_shift); }
    int child_shift() const noexcept { return child_shift_for(span_shift); }
    Timestamp child_start(std::size_t i) const noexcept {
        return start + static_cast<Timestamp>(i) * window_width(child_shift());
    }
    std::size_t child_index(Timestamp t) const noexcept {
        return static_cast<std::size_t>((t - start) >> child_shift());
    }

    static constexpr int child_shift_for(int span_shift) noexcept { return span_shift > 6 ? span_shift - 6 : 0; }
    static constexpr std::size_t fanout_for(int span_shift) noexcept {
        return std::size_t{1} << (span_shift - child_shift_for(span_shift));
    }
};

inline constexpr std::size_t kMaxFanout = 64;

/// Little-endian fixed-width encoding:
///   u8 kind | u8 span_shift | u16 0 | u32 n | u64 version | i64 start
///   leaf:     n x (i64 time, f64 value)
///   internal: n = fanout; u64 present-bitmap; per present child
///             (u64 ref, u64 version, u64 count, f64 sum, f64 min, f64 max)
Bytes encode_node(const Node& node);
Node decode_node(std::span<const std::byte> bytes);

/// Approximate resident size of a decoded node.
std::size_t node_footprint(const Node& node) noexcept;

}  // namespace strata::store
