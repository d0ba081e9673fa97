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

#include "strata/store/node_cache.hpp"

namespace strata::store {

NodePtr NodeCache::get(BlockRef ref) {
    std::lock_guard lock(mu_);
    auto it = index_.find(ref);
    if (it == index_.end()) {
        ++misses_;
        return nullptr;
    }
    ++hits_;
    lru_.splice(lru_.begin(), lru_, it->second);
    return it->second->node;
}

void NodeCache::put(BlockRef ref, NodePtr node) {
    const std::size_t bytes = node_footprint(*node);
    std::lock_guard lock(mu_);
    if (bytes > capacity_ || index_.count(ref) != 0) {
        return;
    }
    lru_.push_front({ref, std::move(node), bytes});
    index_.emplace(ref, lru_.begin());
    resident_ += bytes;
    evict_locked();
}

void NodeCache::evict_locked() {
    while (resident_ > capacity_ && !lru_.empty()) {
        auto& victim = lru_.back();
        resident_ -= victim.bytes;
        index_.erase(victim.ref);
        lru_.pop_back();
    }
}

void NodeCache::clear() {
    std::lock_guard lock(mu_);
    lru_.clear();
    index_.clear();
    resident_ = 0;
}

std::size_t NodeCache::resident_bytes() const {
    std::lock_guard lock(mu_);
    return resident_;
}

std::size_t NodeCache::size() const {
    std::lock_guard lock(mu_);
    return index_.size();
}

std::uint64_t NodeCache::hits() const {
    std::lock_guard lock(mu_);
    return hits_;
}

std::uint64_t NodeCache::misses() const {
    std::lock_guard lock(mu_);
    return misses_;
}

}  // namespace strata::store
