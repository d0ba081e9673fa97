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

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace strata::client {

inline constexpr std::size_t kEntryOverheadBytes = 256;
inline constexpr std::size_t kSummaryBytes = 40;
inline constexpr std::size_t kDefaultCacheBudget = std::size_t{1} << 30;

using EntryId = std::uint64_t;

/// A contiguous run of summaries for one (stream, resolution). A complete
/// entry holds every non-empty window in [start, end); a missing start inside
/// the span is a true gap. Entries are immutable once shared.
struct CacheEntry {
    EntryId id = 0;
    StreamId stream;
    int resolution = 0;
    Timestamp start = 0;
    Timestamp end = 0;
    bool pending = false;
    VersionId version = 0;
    std::vector<StatSummary> summaries;
    std::optional<StatSummary> edge_before;
    std::optional<StatSummary> edge_after;

    TimeRange range() const noexcept { return {start, end}; }
    std::size_t bytes() const noexcept {
        return kEntryOverheadBytes +
               kSummaryBytes * (summaries.size() + (edge_before ? 1 : 0) + (edge_after ? 1 : 0));
    }
};

using EntryPtr = std::shared_ptr<const CacheEntry>;

struct CacheLookup {
    /// Complete entries overlapping the range, ascending by start.
    std::vector<EntryPtr> entries;
    /// Maximal sub-ranges not covered by complete entries.
    std::vector<TimeRange> missing;
};

/// Per-stream, per-resolution cache of aggregate runs under an LRU byte budget.
/// Not thread-safe; owned by one controller thread.
class ClientCache {
public:
    explicit ClientCache(std::size_t budget_bytes = kDefaultCacheBudget);

    /// Complete entries touching `range` at r plus what they leave uncovered.
    /// Touched entries become most recently used.
    CacheLookup lookup(const StreamId& id, int r, TimeRange range);

    /// Parts of `range` covered by neither complete nor pending entries.
    std::vector<TimeRange> uncovered(const StreamId& id, int r, TimeRange range) const;
    /// True when complete entries at r cover all of `range`.
    bool covers(const StreamId& id, int r, TimeRange range) const;
    /// Parts of `range` not covered by a pending entry.
    std::vector<TimeRange> not_pending(const StreamId& id, int r, TimeRange range) const;

    /// Registers a placeholder; the range must not overlap another pending entry.
    EntryId add_pending(const StreamId& id, int r, TimeRange range);
    bool is_pending(EntryId entry) const;
    void remove_pending(EntryId entry);

    /// Converts a pending entry into a complete one. Overlapping complete
    /// entries at the same resolution are trimmed. Returns the new entry, or
    /// nullptr for an orphan response. Eviction then runs, sparing `protect`.
    EntryPtr complete(EntryId entry, VersionId version, std::vector<StatSummary> summaries,
                      std::optional<StatSummary> edge_before, std::optional<StatSummary> edge_after,
                      const std::unordered_set<EntryId>& protect = {});

    /// Drops complete entries of any resolution intersecting any range.
    /// Returns the dropped entries.
    std::vector<EntryPtr> drop_intersecting(const StreamId& id, const std::vector<TimeRange>& ranges);

    /// Evicts least recently used complete entries outside `protect` until
    /// the budget is met or nothing evictable remains.
    void evict(const std::unordered_set<EntryId>& protect);

    std::optional<VersionId> base_version(const StreamId& id) const;
    void set_base_version(const StreamId& id, VersionId v);

    std::size_t total_bytes() const noexcept { return total_bytes_; }
    std::size_t budget() const noexcept { return budget_; }
    std::size_t entry_count(const StreamId& id, int r) const;
    std::size_t pending_count() const noexcept { return pending_.size(); }
    std::vector<EntryPtr> entries(const StreamId& id, int r) const;
    EntryPtr find(EntryId entry) const;
    std::uint64_t evictions() const noexcept { return evictions_; }

private:
    struct Level {
        std::map<Timestamp, EntryPtr> complete;
        std::map<Timestamp, EntryPtr> pending;
    };
    struct StreamState {
        std::array<Level, kMaxResolution + 1> levels;
        std::optional<VersionId> base;
    };
    struct Slot {
        StreamId stream;
        int resolution;
        Timestamp start;
        std::uint64_t lru;
    };

    StreamState& state(const StreamId& id);
    const StreamState* find_state(const StreamId& id) const;
    void insert_complete(Level& level, EntryPtr e);
    void erase_complete(Level& level, std::map<Timestamp, EntryPtr>::iterator it);
    void touch(EntryId id);

    std::size_t budget_;
    std::size_t total_bytes_ = 0;
    std::uint64_t tick_ = 0;
    EntryId next_id_ = 1;
    std::uint64_t evictions_ = 0;
    std::unordered_map<StreamId, StreamState, StreamIdHash> streams_;
    std::unordered_map<EntryId, Slot> slots_;
    std::unordered_map<EntryId, EntryPtr> pending_;
};

}  // namespace strata::client
