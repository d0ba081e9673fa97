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

#include "strata/store/node_cache.hpp"

#include <atomic>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace strata::store {

/// Loads and writes nodes for tree operations: block store plus an optional
/// decoded-node cache. Counts node loads so tests can bound query work.
class NodeSource {
public:
    NodeSource(BlockStore& store, NodeCache* cache) : store_(store), cache_(cache) {}

    NodePtr load(BlockRef ref) const;
    BlockRef write(const Node& node);

    std::uint64_t loads() const noexcept { return loads_.load(std::memory_order_relaxed); }
    NodeCache* cache() const noexcept { return cache_; }

private:
    BlockStore& store_;
    NodeCache* cache_;
    mutable std::atomic<std::uint64_t> loads_{0};
};

/// Result of writing a (sub)tree: its block, version tag and aggregate.
struct WrittenNode {
    BlockRef ref = kNullBlock;
    VersionId version = 0;
    Aggregate agg;
};

struct AuditReport {
    std::size_t internal_nodes = 0;
    std::size_t leaves = 0;
    std::uint64_t points = 0;
    int max_depth = 0;
    std::vector<std::string> problems;

    bool ok() const noexcept { return problems.empty(); }
};

/// Copy-on-write time-partitioning tree rooted at [0, 2^62). All functions are
/// stateless over a NodeSource; a version is fully identified by its root.
namespace tree {

WrittenNode write_empty_root(NodeSource& src, VersionId version);

/// Inserts time-sorted points (stable for equal times) and returns the new
/// root. Only nodes on touched paths are rewritten; each rewritten internal
/// node's child slots are recomputed from its immediate children.
WrittenNode insert(NodeSource& src, BlockRef root, std::span<const RawPoint> sorted, VersionId version,
                   std::size_t leaf_threshold);

void raw_values(const NodeSource& src, BlockRef root, TimeRange range, std::vector<RawPoint>& out);

/// range bounds must be multiples of 2^resolution.
std::vector<StatSummary> aligned_windows(const NodeSource& src, BlockRef root, TimeRange range, int resolution);

/// Backward: greatest time <= t. Forward: smallest time > t.
std::optional<RawPoint> nearest(const NodeSource& src, BlockRef root, Timestamp t, Direction dir);

/// Sorted, coalesced, 2^resolution-aligned ranges covering every timestamp
/// whose point multiset differs between from_root and to_root.
std::vector<TimeRange> changes(const NodeSource& src, BlockRef to_root, BlockRef from_root, VersionId from_version,
                               int resolution);

std::uint64_t point_count(const NodeSource& src, BlockRef root);

/// Walks every node reachable from root and checks structural invariants and
/// that every child slot matches a brute-force aggregate of its raw points.
AuditReport audit(const NodeSource& src, BlockRef root, std::size_t leaf_threshold);

}  // namespace tree

}  // namespace strata::store
