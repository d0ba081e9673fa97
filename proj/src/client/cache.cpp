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

#include "strata/client/cache.hpp"

#include "strata/client/view.hpp"

#include <algorithm>
#include <cassert>

namespace strata::client {

namespace {

template <typename Map>
auto first_overlapping(Map& m, Timestamp start) {
    auto it = m.upper_bound(start);
    if (it != m.begin()) {
        auto prev = std::prev(it);
        if (prev->second->end > start) return prev;
    }
    return it;
}

std::optional<StatSummary> summary_at(const CacheEntry& e, Timestamp start) {
    auto it = std::lower_bound(e.summaries.begin(), e.summaries.end(), start,
                               [](const StatSummary& s, Timestamp t) { return s.start < t; });
    if (it != e.summaries.end() && it->start == start) return *it;
    return std::nullopt;
}

std::vector<StatSummary> slice(const CacheEntry& e, Timestamp lo, Timestamp hi) {
    auto cmp = [](const StatSummary& s, Timestamp t) { return s.start < t; };
    auto b = std::lower_bound(e.summaries.begin(), e.summaries.end(), lo, cmp);
    auto f = std::lower_bound(b, e.summaries.end(), hi, cmp);
    return {b, f};
}

}  // namespace

ClientCache::ClientCache(std::size_t budget_bytes) : budget_(budget_bytes) {}

ClientCache::StreamState& ClientCache::state(const StreamId& id) { return streams_[id]; }

const ClientCache::StreamState* ClientCache::find_state(const StreamId& id) const {
    auto it = streams_.find(id);
    return it == streams_.end() ? nullptr : &it->second;
}

void ClientCache::touch(EntryId id) {
    auto it = slots_.find(id);
    if (it != slots_.end()) it->second.lru = ++tick_;
}

CacheLookup ClientCache::lookup(const StreamId& id, int r, TimeRange range) {
    CacheLookup out;
    auto& level = state(id).levels[static_cast<std::size_t>(r)];
    std::vector<TimeRange> covered;
    for (auto it = first_overlapping(level.complete, range.start);
         it != level.complete.end() && it->first < range.end; ++it) {
        out.entries.push_back(it->second);
        covered.push_back(it->second->range());
        touch(it->second->id);
    }
    out.missing = subtract_ranges(range, std::move(covered));
    return out;
}

std::vector<TimeRange> ClientCache::uncovered(const StreamId& id, int r, TimeRange range) const {
    const auto* s = find_state(id);
    if (s == nullptr) return range.empty() ? std::vector<TimeRange>{} : std::vector<TimeRange>{range};
    const auto& level = s->levels[static_cast<std::size_t>(r)];
    std::vector<TimeRange> covered;
    for (const auto* m : {&level.complete, &level.pending}) {
        for (auto it = first_overlapping(*m, range.start); it != m->end() && it->first < range.end; ++it) {
            covered.push_back(it->second->range());
        }
    }
    return subtract_ranges(range, std::move(covered));
}

bool ClientCache::covers(const StreamId& id, int r, TimeRange range) const {
    const auto* s = find_state(id);
    if (s == nullptr) return range.empty();
    const auto& m = s->levels[static_cast<std::size_t>(r)].complete;
    std::vector<TimeRange> covered;
    for (auto it = first_overlapping(m, range.start); it != m.end() && it->first < range.end; ++it) {
        covered.push_back(it->second->range());
    }
    return subtract_ranges(range, std::move(covered)).empty();
}

std::vector<TimeRange> ClientCache::not_pending(const StreamId& id, int r, TimeRange range) const {
    const auto* s = find_state(id);
    if (s == nullptr) return range.empty() ? std::vector<TimeRange>{} : std::vector<TimeRange>{range};
    const auto& m = s->levels[static_cast<std::size_t>(r)].pending;
    std::vector<TimeRange> covered;
    for (auto it = first_overlapping(m, range.start); it != m.end() && it->first < range.end; ++it) {
        covered.push_back(it->second->range());
    }
    return subtract_ranges(range, std::move(covered));
}

EntryId ClientCache::add_pending(const StreamId& id, int r, TimeRange range) {
    auto e = std::make_shared<CacheEntry>();
    e->id = next_id_++;
    e->stream = id;
    e->resolution = r;
    e->start = range.start;
    e->end = range.end;
    e->pending = true;
    auto& level = state(id).levels[static_cast<std::size_t>(r)];
    assert(not_pending(id, r, range).size() == 1);
    level.pending.emplace(range.start, e);
    slots_[e->id] = {id, r, range.start, ++tick_};
    total_bytes_ += e->bytes();
    pending_.emplace(e->id, e);
    return e->id;
}

bool ClientCache::is_pending(EntryId entry) const { return pending_.count(entry) != 0; }

void ClientCache::remove_pending(EntryId entry) {
    auto it = pending_.find(entry);
    if (it == pending_.end()) return;
    const auto& e = *it->second;
    state(e.stream).levels[static_cast<std::size_t>(e.resolution)].pending.erase(e.start);
    total_bytes_ -= e.bytes();
    slots_.erase(entry);
    pending_.erase(it);
}

void ClientCache::insert_complete(Level& level, EntryPtr e) {
    total_bytes_ += e->bytes();
    slots_[e->id] = {e->stream, e->resolution, e->start, ++tick_};
    level.complete.emplace(e->start, std::move(e));
}

void ClientCache::erase_complete(Level& level, std::map<Timestamp, EntryPtr>::iterator it) {
    total_bytes_ -= it->second->bytes();
    slots_.erase(it->second->id);
    level.complete.erase(it);
}

EntryPtr ClientCache::complete(EntryId entry, VersionId version, std::vector<StatSummary> summaries,
                               std::optional<StatSummary> edge_before, std::optional<StatSummary> edge_after,
                               const std::unordered_set<EntryId>& protect) {
    auto pit = pending_.find(entry);
    if (pit == pending_.end()) return nullptr;
    const EntryPtr placeholder = pit->second;
    remove_pending(entry);

    auto& st = state(placeholder->stream);
    st.base = st.base ? std::min(*st.base, version) : version;
    auto& level = st.levels[static_cast<std::size_t>(placeholder->resolution)];
    const Timestamp s = placeholder->start;
    const Timestamp e = placeholder->end;
    const Timestamp w = window_width(placeholder->resolution);

    std::vector<EntryPtr> overlapped;
    for (auto it = first_overlapping(level.complete, s); it != level.complete.end() && it->first < e;) {
        overlapped.push_back(it->second);
        auto next = std::next(it);
        erase_complete(level, it);
        it = next;
    }
    for (const auto& old : overlapped) {
        if (old->start < s) {
            auto piece = std::make_shared<CacheEntry>(*old);
            piece->id = next_id_++;
            piece->end = s;
            piece->summaries = slice(*old, old->start, s);
            piece->edge_after = summary_at(*old, s);
            insert_complete(level, std::move(piece));
        }
        if (old->end > e) {
            auto piece = std::make_shared<CacheEntry>(*old);
            piece->id = next_id_++;
            piece->start = e;
            piece->summaries = slice(*old, e, old->end);
            piece->edge_before = summary_at(*old, e - w);
            insert_complete(level, std::move(piece));
        }
    }

    auto done = std::make_shared<CacheEntry>();
    done->id = placeholder->id;
    done->stream = placeholder->stream;
    done->resolution = placeholder->resolution;
    done->start = s;
    done->end = e;
    done->version = version;
    done->summaries = std::move(summaries);
    done->edge_before = edge_before;
    done->edge_after = edge_after;
    insert_complete(level, done);

    auto keep = protect;
    keep.insert(done->id);
    evict(keep);
    return done;
}

std::vector<EntryPtr> ClientCache::drop_intersecting(const StreamId& id, const std::vector<TimeRange>& ranges) {
    std::vector<EntryPtr> dropped;
    auto& st = state(id);
    for (auto& level : st.levels) {
        for (auto it = level.complete.begin(); it != level.complete.end();) {
            const auto range = it->second->range();
            const bool hit = std::any_of(ranges.begin(), ranges.end(), [&](const TimeRange& c) { return c.overlaps(range); });
            if (hit) {
                dropped.push_back(it->second);
                auto next = std::next(it);
                erase_complete(level, it);
                it = next;
            } else {
                ++it;
            }
        }
    }
    return dropped;
}

void ClientCache::evict(const std::unordered_set<EntryId>& protect) {
    while (total_bytes_ > budget_) {
        const Slot* victim = nullptr;
        EntryId victim_id = 0;
        for (const auto& [eid, slot] : slots_) {
            if (pending_.count(eid) || protect.count(eid)) continue;
            if (victim == nullptr || slot.lru < victim->lru) {
                victim = &slot;
                victim_id = eid;
            }
        }
        if (victim == nullptr) return;
        auto& level = state(victim->stream).levels[static_cast<std::size_t>(victim->resolution)];
        auto it = level.complete.find(victim->start);
        if (it == level.complete.end() || it->second->id != victim_id) {
            slots_.erase(victim_id);
            continue;
        }
        erase_complete(level, it);
        ++evictions_;
    }
}

std::optional<VersionId> ClientCache::base_version(const StreamId& id) const {
    const auto* s = find_state(id);
    return s ? s->base : std::nullopt;
}

void ClientCache::set_base_version(const StreamId& id, VersionId v) { state(id).base = v; }

std::size_t ClientCache::entry_count(const StreamId& id, int r) const {
    const auto* s = find_state(id);
    return s ? s->levels[static_cast<std::size_t>(r)].complete.size() : 0;
}

std::vector<EntryPtr> ClientCache::entries(const StreamId& id, int r) const {
    std::vector<EntryPtr> out;
    if (const auto* s = find_state(id)) {
        for (const auto& [start, e] : s->levels[static_cast<std::size_t>(r)].complete) out.push_back(e);
    }
    return out;
}

EntryPtr ClientCache::find(EntryId entry) const {
    if (auto it = pending_.find(entry); it != pending_.end()) return it->second;
    auto it = slots_.find(entry);
    if (it == slots_.end()) return nullptr;
    const auto* s = find_state(it->second.stream);
    const auto& level = s->levels[static_cast<std::size_t>(it->second.resolution)];
    auto e = level.complete.find(it->second.start);
    return e == level.complete.end() ? nullptr : e->second;
}

}  // namespace strata::client
