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

#include "strata/client/view_controller.hpp"

#include <algorithm>
#include <chrono>

namespace strata::client {

double steady_now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

ViewController::ViewController(Transport& transport, ControllerOptions options, Clock clock)
    : transport_(transport),
      options_(options),
      clock_(std::move(clock)),
      cache_(options.cache_budget_bytes),
      throttle_(options.throttle_ms),
      inbox_(std::make_shared<Inbox>()) {
    last_poll_ms_ = clock_();
}

ViewController::~ViewController() {
    // Completions still in flight land in the orphaned inbox and are dropped.
    std::lock_guard lock(inbox_->mu);
    inbox_->events.clear();
}

ViewController::StreamCtl* ViewController::find(const StreamId& id) {
    for (auto& s : streams_) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

const OnScreenSet* ViewController::on_screen(const StreamId& id) const {
    for (const auto& s : streams_) {
        if (s.id == id) return &s.on_screen;
    }
    return nullptr;
}

bool ViewController::view_complete() const {
    return view_.has_value() && std::all_of(streams_.begin(), streams_.end(), [](const StreamCtl& s) { return s.fresh; });
}

bool ViewController::idle() const {
    std::lock_guard lock(inbox_->mu);
    return inflight_ == 0 && !deferred_ && inbox_->events.empty();
}

void ViewController::emit(ControllerEvent e) {
    if (e == ControllerEvent::DrawListReady) ++stats_.draw_lists;
    if (listener_) listener_(e);
}

std::unordered_set<EntryId> ViewController::protected_entries() const {
    std::unordered_set<EntryId> out;
    for (const auto& s : streams_) {
        for (const auto& e : s.on_screen.entries) out.insert(e->id);
    }
    return out;
}

void ViewController::set_streams(std::vector<StreamId> streams) {
    std::vector<StreamCtl> next;
    for (const auto& id : streams) {
        if (auto* existing = find(id)) {
            next.push_back(std::move(*existing));
        } else {
            StreamCtl s;
            s.id = id;
            s.on_screen.stream = id;
            next.push_back(std::move(s));
        }
    }
    streams_ = std::move(next);
    if (!view_) return;
    for (auto& s : streams_) {
        if (!s.fresh) try_show(s);
    }
    if (!view_complete()) {
        if (throttle_.should_issue(clock_())) {
            if (request_missing() > 0) throttle_.note_issued(clock_());
        } else {
            deferred_ = true;
        }
    }
    rebuild();
    if (view_complete()) maybe_prefetch();
}

void ViewController::set_selected_stream(std::optional<StreamId> id) {
    selected_ = id;
    rebuild();
}

void ViewController::set_always_connect(bool on) {
    always_connect_ = on;
    rebuild();
}

bool ViewController::try_show(StreamCtl& s) {
    auto found = cache_.lookup(s.id, r_, aligned_);
    if (!found.missing.empty() || found.entries.size() > options_.max_entries_on_screen) return false;
    s.on_screen = {s.id, r_, std::move(found.entries)};
    s.fresh = true;
    return true;
}

void ViewController::set_view(const ViewState& view) {
    const double t_start = clock_();
    view_ = view;
    r_ = choose_resolution(view);
    aligned_ = align_request_range(view.t0, view.t1, r_);
    ++view_seq_;
    emit(ControllerEvent::ViewChanged);

    bool hit = true;
    for (auto& s : streams_) {
        s.fresh = false;
        hit &= try_show(s);
    }

    LookupRecord rec;
    rec.t_ms = t_start;
    rec.hit = hit;
    rec.resolution = r_;
    rec.range = aligned_;
    rebuild();
    if (hit) {
        rec.lookup_ms = clock_() - t_start;
        records_.push_back(rec);
        maybe_prefetch();
    } else {
        if (throttle_.should_issue(t_start)) {
            deferred_ = false;
            if (request_missing() > 0) throttle_.note_issued(t_start);
        } else {
            deferred_ = true;
            rec.throttled = true;
        }
        rec.lookup_ms = clock_() - t_start;
        unresolved_.push_back(records_.size());
        records_.push_back(rec);
    }
    emit(ControllerEvent::MetricsUpdated);
}

std::size_t ViewController::request_missing() {
    if (!view_) return 0;
    std::size_t issued = 0;
    const Timestamp view_width = aligned_.width();
    for (auto& s : streams_) {
        if (s.fresh) continue;
        auto found = cache_.lookup(s.id, r_, aligned_);
        std::vector<TimeRange> targets;
        if (found.missing.empty()) {
            if (found.entries.size() > options_.max_entries_on_screen) targets.push_back(aligned_);
        } else {
            targets = found.missing;
            // Narrow holes at the view's edges grow to a full view width
            // outward. When both edges are missing only the wider side grows.
            const bool left = targets.front().start == aligned_.start && targets.front().width() < view_width;
            const bool right = targets.back().end == aligned_.end && targets.back().width() < view_width;
            bool grow_left = left;
            bool grow_right = right;
            if (left && right) {
                if (targets.size() == 1) {
                    grow_left = grow_right = false;
                } else if (targets.front().width() > targets.back().width()) {
                    grow_right = false;
                } else {
                    grow_left = false;
                }
            }
            if (grow_left) {
                auto& t = targets.front();
                t.start = std::max(kTimeBegin, t.end - view_width);
            }
            if (grow_right) {
                auto& t = targets.back();
                t.end = std::min(kTimeEnd, t.start + view_width);
            }
            if (found.entries.size() + targets.size() > options_.max_entries_on_screen) {
                targets.assign(1, aligned_);
            }
        }
        for (const auto& t : merge_ranges(targets)) {
            for (const auto& piece : cache_.not_pending(s.id, r_, t)) {
                issue(s, r_, piece, Kind::Miss);
                ++issued;
            }
        }
    }
    return issued;
}

void ViewController::maybe_prefetch() {
    if (!options_.prefetch || !view_ || prefetched_seq_ == view_seq_ || !view_complete()) return;
    prefetched_seq_ = view_seq_;
    for (const auto& target : plan_prefetch(*view_, r_)) {
        for (auto& s : streams_) {
            for (const auto& piece : cache_.uncovered(s.id, target.resolution, target.range)) {
                issue(s, target.resolution, piece, Kind::Prefetch);
            }
        }
    }
}

void ViewController::issue(StreamCtl& s, int r, TimeRange range, Kind kind) {
    const EntryId entry = cache_.add_pending(s.id, r, range);
    if (kind == Kind::Miss) {
        ++stats_.miss_requests;
    } else {
        ++stats_.prefetch_requests;
    }
    send(entry, s.id, r, range, kind, 0, s.pinned.value_or(kLatestVersion));
}

void ViewController::send(EntryId entry, StreamId id, int r, TimeRange range, Kind kind, int attempt,
                          VersionId version) {
    {
        std::lock_guard lock(inbox_->mu);
        ++inflight_;
    }
    const auto wide = with_edges(range, r);
    std::weak_ptr<Inbox> weak = inbox_;
    transport_.aligned_windows(
        {id, wide.start, wide.end, r, version},
        [weak, entry, id, r, range, kind, attempt, version](Result<WindowsReply> result) {
            auto inbox = weak.lock();
            if (!inbox) return;
            {
                std::lock_guard lock(inbox->mu);
                inbox->events.push_back([=, result = std::move(result)](ViewController& c) mutable {
                    c.on_windows(entry, id, r, range, kind, attempt, version, std::move(result));
                });
            }
            inbox->cv.notify_all();
        });
}

void ViewController::on_windows(EntryId entry, StreamId id, int r, TimeRange range, Kind kind, int attempt,
                                VersionId version, Result<WindowsReply> result) {
    {
        std::lock_guard lock(inbox_->mu);
        --inflight_;
    }
    if (!result.ok()) {
        if (options_.retry_once && attempt == 0 && cache_.is_pending(entry)) {
            ++stats_.retries;
            send(entry, id, r, range, kind, 1, version);
            return;
        }
        ++stats_.failures;
        cache_.remove_pending(entry);
        if (kind == Kind::Miss) deferred_ = true;
        return;
    }
    ++stats_.responses;
    auto reply = std::move(result).value();
    std::optional<StatSummary> before;
    std::optional<StatSummary> after;
    std::vector<StatSummary> inside;
    inside.reserve(reply.summaries.size());
    for (auto& s : reply.summaries) {
        if (s.start < range.start) {
            before = s;
        } else if (s.start >= range.end) {
            if (!after) after = s;
        } else {
            inside.push_back(s);
        }
    }
    auto done = cache_.complete(entry, reply.version, std::move(inside), before, after, protected_entries());
    if (!done) {
        ++stats_.orphans;
        return;
    }
    if (auto* s = find(id); s && !s->pinned) s->pinned = reply.version;
    data_changed_ = true;
}

void ViewController::on_changes(StreamId id, Result<ChangesReply> result) {
    {
        std::lock_guard lock(inbox_->mu);
        --inflight_;
    }
    auto* s = find(id);
    if (s) s->changes_inflight = false;
    if (!result.ok() || !s) return;
    const auto& reply = result.value();
    cache_.drop_intersecting(id, reply.ranges);
    cache_.set_base_version(id, reply.version);
    s->pinned = reply.version;
    bool stale = false;
    for (const auto& e : s->on_screen.entries) {
        for (const auto& c : reply.ranges) stale |= c.overlaps(e->range());
    }
    if (stale && view_) {
        s->fresh = false;
        if (!try_show(*s)) {
            if (throttle_.should_issue(clock_())) {
                if (request_missing() > 0) throttle_.note_issued(clock_());
            } else {
                deferred_ = true;
            }
        }
    }
}

bool ViewController::refresh_changes(const StreamId& id) {
    auto* s = find(id);
    const auto base = cache_.base_version(id);
    if (!s || !base || s->changes_inflight) return false;
    s->changes_inflight = true;
    ++stats_.change_polls;
    {
        std::lock_guard lock(inbox_->mu);
        ++inflight_;
    }
    const int rc = std::min(kMaxResolution, r_ + options_.change_resolution_offset);
    std::weak_ptr<Inbox> weak = inbox_;
    transport_.changes({id, *base, kLatestVersion, rc}, [weak, id](Result<ChangesReply> result) {
        auto inbox = weak.lock();
        if (!inbox) return;
        {
            std::lock_guard lock(inbox->mu);
            inbox->events.push_back([id, result = std::move(result)](ViewController& c) mutable {
                c.on_changes(id, std::move(result));
            });
        }
        inbox->cv.notify_all();
    });
    return true;
}

void ViewController::tick() {
    std::deque<std::function<void(ViewController&)>> events;
    {
        std::lock_guard lock(inbox_->mu);
        events.swap(inbox_->events);
    }
    for (auto& e : events) e(*this);
    if (data_changed_) after_data();

    const double now = clock_();
    if (deferred_ && view_ && throttle_.should_issue(now)) {
        deferred_ = false;
        if (!view_complete() && request_missing() > 0) throttle_.note_issued(now);
    }
    if (options_.changes_poll_ms > 0 && now - last_poll_ms_ >= options_.changes_poll_ms) {
        last_poll_ms_ = now;
        for (const auto& s : streams_) refresh_changes(s.id);
    }
}

void ViewController::after_data() {
    data_changed_ = false;
    bool arrived = false;
    if (view_) {
        for (auto& s : streams_) {
            if (!s.fresh) arrived |= try_show(s);
        }
    }
    if (arrived) {
        rebuild();
        emit(ControllerEvent::DataArrived);
    }
    resolve_misses();
    if (view_complete()) maybe_prefetch();
}

void ViewController::resolve_misses() {
    if (unresolved_.empty()) return;
    const double now = clock_();
    bool any = false;
    std::erase_if(unresolved_, [&](std::size_t idx) {
        auto& rec = records_[idx];
        for (const auto& s : streams_) {
            if (!cache_.covers(s.id, rec.resolution, rec.range)) return false;
        }
        rec.penalty_ms = now - rec.t_ms;
        any = true;
        return true;
    });
    if (any) emit(ControllerEvent::MetricsUpdated);
}

void ViewController::rebuild() {
    if (!view_) return;
    std::vector<OnScreenSet> sets;
    sets.reserve(streams_.size());
    for (const auto& s : streams_) sets.push_back(s.on_screen);
    draw_list_ = build_drawlist(sets, *view_, {always_connect_, selected_});
    emit(ControllerEvent::DrawListReady);
}

bool ViewController::wait_for_events(double deadline_ms) {
    std::unique_lock lock(inbox_->mu);
    for (;;) {
        if (!inbox_->events.empty()) return true;
        const double remaining = deadline_ms - clock_();
        if (remaining <= 0) return false;
        inbox_->cv.wait_for(lock, std::chrono::duration<double, std::milli>(remaining));
    }
}

}  // namespace strata::client
