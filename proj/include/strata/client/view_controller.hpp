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

#include "strata/client/cache.hpp"
#include "strata/client/drawlist.hpp"
#include "strata/client/policy.hpp"
#include "strata/client/transport.hpp"

#include <condition_variable>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>

namespace strata::client {

enum class ControllerEvent { ViewChanged, DataArrived, DrawListReady, MetricsUpdated };

struct ControllerOptions {
    bool prefetch = true;
    double throttle_ms = kThrottleWindowMs;
    std::size_t cache_budget_bytes = kDefaultCacheBudget;
    /// Period of automatic Changes polling; 0 disables it.
    double changes_poll_ms = 5000.0;
    int change_resolution_offset = 6;
    std::size_t max_entries_on_screen = 5;
    bool retry_once = true;
};

/// One cache lookup triggered by a view change.
struct LookupRecord {
    double t_ms = 0.0;
    bool hit = false;
    /// Time spent in the synchronous part of set_view.
    double lookup_ms = 0.0;
    /// Time until the needed summaries were all cached; misses only.
    std::optional<double> penalty_ms;
    bool throttled = false;
    int resolution = 0;
    TimeRange range;
};

struct ControllerStats {
    std::uint64_t miss_requests = 0;
    std::uint64_t prefetch_requests = 0;
    std::uint64_t retries = 0;
    std::uint64_t failures = 0;
    std::uint64_t responses = 0;
    std::uint64_t orphans = 0;
    std::uint64_t change_polls = 0;
    std::uint64_t draw_lists = 0;
};

using Clock = std::function<double()>;
/// Monotonic milliseconds from std::chrono::steady_clock.
double steady_now_ms();

/// Single-owner view controller. All methods except the transport callbacks
/// it installs must be called from one thread; completions are queued and
/// applied by tick().
class ViewController {
public:
    ViewController(Transport& transport, ControllerOptions options = {}, Clock clock = steady_now_ms);
    ~ViewController();

    ViewController(const ViewController&) = delete;
    ViewController& operator=(const ViewController&) = delete;

    void set_streams(std::vector<StreamId> streams);
    void set_selected_stream(std::optional<StreamId> id);
    void set_always_connect(bool on);
    void set_view(const ViewState& view);

    /// Applies queued completions and runs deferred work.
    void tick();
    /// Blocks until a completion is queued or the clock reaches deadline_ms.
    bool wait_for_events(double deadline_ms);

    /// Polls Changes from the base version; false if there is no base yet.
    bool refresh_changes(const StreamId& id);

    void set_listener(std::function<void(ControllerEvent)> listener) { listener_ = std::move(listener); }

    const DrawList& draw_list() const noexcept { return draw_list_; }
    const std::optional<ViewState>& view() const noexcept { return view_; }
    int resolution() const noexcept { return r_; }
    TimeRange aligned_range() const noexcept { return aligned_; }
    const ClientCache& cache() const noexcept { return cache_; }
    const std::vector<LookupRecord>& lookups() const noexcept { return records_; }
    void clear_lookups() {
        records_.clear();
        unresolved_.clear();
    }
    const ControllerStats& stats() const noexcept { return stats_; }
    /// On-screen set of a stream, possibly stale.
    const OnScreenSet* on_screen(const StreamId& id) const;
    /// Every stream shows data fetched for the current view.
    bool view_complete() const;
    /// No pending requests, deferred fetches or queued completions.
    bool idle() const;

private:
    struct Inbox {
        std::mutex mu;
        std::condition_variable cv;
        std::deque<std::function<void(ViewController&)>> events;
    };
    struct StreamCtl {
        StreamId id;
        std::optional<VersionId> pinned;
        OnScreenSet on_screen;
        bool fresh = false;
        bool changes_inflight = false;
    };
    enum class Kind { Miss, Prefetch };

    StreamCtl* find(const StreamId& id);
    bool try_show(StreamCtl& s);
    /// Issues requests for the current view's missing data. Returns the count.
    std::size_t request_missing();
    void maybe_prefetch();
    void issue(StreamCtl& s, int r, TimeRange range, Kind kind);
    void send(EntryId entry, StreamId id, int r, TimeRange range, Kind kind, int attempt, VersionId version);
    void on_windows(EntryId entry, StreamId id, int r, TimeRange range, Kind kind, int attempt, VersionId version,
                    Result<WindowsReply> result);
    void on_changes(StreamId id, Result<ChangesReply> result);
    void after_data();
    void resolve_misses();
    void rebuild();
    void emit(ControllerEvent e);
    std::unordered_set<EntryId> protected_entries() const;

    Transport& transport_;
    ControllerOptions options_;
    Clock clock_;
    ClientCache cache_;
    Throttle throttle_;
    std::shared_ptr<Inbox> inbox_;

    std::vector<StreamCtl> streams_;
    std::optional<StreamId> selected_;
    bool always_connect_ = false;
    std::optional<ViewState> view_;
    int r_ = 0;
    TimeRange aligned_;
    std::uint64_t view_seq_ = 0;
    std::uint64_t prefetched_seq_ = 0;
    bool deferred_ = false;
    bool data_changed_ = false;
    double last_poll_ms_ = 0.0;
    std::size_t inflight_ = 0;

    std::vector<LookupRecord> records_;
    std::vector<std::size_t> unresolved_;
    DrawList draw_list_;
    ControllerStats stats_;
    std::function<void(ControllerEvent)> listener_;
};

}  // namespace strata::client
