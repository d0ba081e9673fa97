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

#include "strata/store/node.hpp"

#include <list>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace strata::store {

using NodePtr = std::shared_ptr<const Node>;

/// Byte-bounded LRU of decoded nodes. Nodes are immutable, so entries never
/// need invalidation. Internally synchronized.
class NodeCache {
public:
    explicit NodeCache(std::size_t capacity_bytes) : capacity_(capacity_bytes) {}

    NodePtr get(BlockRef ref);
    void put(BlockRef ref, NodePtr node);
    void clear();

    std::size_t capacity_bytes() const noexcept { return capacity_; }
    std::size_t resident_bytes() const;
    std::size_t size() const;
    std::uint64_t hits() const;
    std::uint64_t misses() const;

private:
    struct Slot {
        BlockRef ref;
        NodePtr node;
        std::size_t bytes;
    };

    void evict_locked();

    const std::size_t capacity_;
    mutable std::mutex mu_;
    std::list<Slot> lru_;  // front = most recent
    std::unordered_map<BlockRef, std::list<Slot>::iterator> index_;
    std::size_t resident_ = 0;
    std::uint64_t hits_ = 0;
    std::uint64_t misses_ = 0;
};

}  // namespace strata::store
