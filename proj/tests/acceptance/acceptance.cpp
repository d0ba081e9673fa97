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

// Acceptance run: one PASS/FAIL line per criterion against an in-process
// loopback service backed by a file store in a temporary directory.
//
//   strata_acceptance [--keep] [name-substring...]

#include "../support/oracle.hpp"
#include "../support/queued_transport.hpp"
#include "strata/client/http_transport.hpp"
#include "strata/harness/flaky_transport.hpp"
#include "strata/harness/workload.hpp"
#include "strata/service/http_server.hpp"

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace strata;
using namespace strata::client;

namespace {

constexpr double kMeanRelTol = 1e-9;
constexpr double kOracleBudgetS = 120.0;
constexpr double kScaleRatioMax = 3.0;
constexpr double kOverviewMaxMs = 100.0;
constexpr double kScaleBudgetS = 600.0;
constexpr double kMissP95MaxMs = 100.0;
constexpr double kFlakyEarlyMs = 200.0;
constexpr double kHitFastShareMin = 0.98;
constexpr double kHitMaxMs = 5.0;
constexpr std::size_t kMaxOnScreen = 5;

constexpr int kOracleStreams = 50;
constexpr int kOracleQueries = 200;
constexpr std::size_t kOracleMaxPoints = 100'000;
constexpr int kSnapshotBatches = 20;
constexpr int kVersionPairs = 100;
constexpr std::uint64_t kSmallPoints = 100'000;
constexpr std::uint64_t kLargePoints = 10'000'000;
constexpr int kOverviewWidth = 1000;
constexpr int kZoomTrials = 10;
constexpr int kOverplotViews = 10'000;
constexpr int kGestureTraces = 8;
constexpr int kGesturesPerTrace = 1000;

struct Outcome {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<Outcome> g_outcomes;
std::vector<std::string> g_filters;

bool selected(const std::string& name) {
    if (g_filters.empty()) return true;
    return std::any_of(g_filters.begin(), g_filters.end(),
                       [&](const std::string& f) { return name.find(f) != std::string::npos; });
}

void report(const std::string& name, bool pass, const std::string& detail) {
    g_outcomes.push_back({name, pass, detail});
    std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
}

template <typename... Args>
std::string fmt(Args&&... args) {
    std::ostringstream os;
    os << std::setprecision(4);
    (os << ... << args);
    return os.str();
}

double now_s() { return steady_now_ms() / 1000.0; }

StreamId stream_number(std::uint64_t n) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "00000000-0000-4000-8000-%012llx", static_cast<unsigned long long>(n));
    return *StreamId::parse(buf);
}

/// Exact count/min/max and start, mean within a relative tolerance.
bool matches_oracle(const std::vector<StatSummary>& got, const std::vector<oracle::Bucket>& want, std::string* why) {
    if (got.size() != want.size()) {
        *why = fmt("window count ", got.size(), " vs ", want.size());
        return false;
    }
    for (std::size_t i = 0; i < got.size(); ++i) {
        const auto& g = got[i];
        const auto& w = want[i];
        if (g.start != w.start || g.count != w.count || g.min != w.min || g.max != w.max ||
            !oracle::mean_close(g.mean, w.mean(), w.min, w.max, kMeanRelTol)) {
            *why = fmt("window at ", w.start, " differs");
            return false;
        }
    }
    return true;
}

std::vector<RawPoint> sorted_by_time_value(std::vector<RawPoint> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const RawPoint& a, const RawPoint& b) { return std::tie(a.time, a.value) < std::tie(b.time, b.value); });
    return pts;
}

void insert_all(Transport& t, const StreamId& id, const std::vector<RawPoint>& pts) {
    constexpr std::size_t kBatch = 100'000;
    for (std::size_t i = 0; i < pts.size(); i += kBatch) {
        std::vector<RawPoint> batch(pts.begin() + static_cast<std::ptrdiff_t>(i),
                                    pts.begin() + static_cast<std::ptrdiff_t>(std::min(pts.size(), i + kBatch)));
        sync::insert(t, {id, std::move(batch), true});
    }
}

/// Runs the controller until it is idle or the timeout passes.
bool settle(ViewController& c, double timeout_ms = 30000) {
    const double deadline = steady_now_ms() + timeout_ms;
    for (;;) {
        c.tick();
        if (c.idle()) return true;
        if (steady_now_ms() > deadline) return false;
        c.wait_for_events(std::min(deadline, steady_now_ms() + 20));
    }
}

// ---------------------------------------------------------------------------

void oracle_equivalence(Transport& t) {
    const std::string name = "aggregate-oracle-equivalence";
    if (!selected(name)) return;
    const double t0 = now_s();
    std::mt19937_64 rng(101);
    std::uint64_t queries = 0;
    std::uint64_t windows = 0;
    std::string failure;
    for (int s = 0; s < kOracleStreams && failure.empty(); ++s) {
        const auto id = stream_number(1000 + static_cast<std::uint64_t>(s));
        const int span_bits = 20 + static_cast<int>(rng() % 25);
        const Timestamp span = Timestamp{1} << span_bits;
        const Timestamp base = static_cast<Timestamp>(rng() % (std::uint64_t{1} << 50));
        const std::size_t n = 1 + rng() % kOracleMaxPoints;
        auto pts = oracle::random_points(rng, n, base, span);
        insert_all(t, id, pts);
        std::sort(pts.begin(), pts.end(), [](const RawPoint& a, const RawPoint& b) { return a.time < b.time; });

        for (int q = 0; q < kOracleQueries; ++q) {
            const int r = static_cast<int>(rng() % static_cast<std::uint64_t>(span_bits + 1));
            const Timestamp w = window_width(r);
            const Timestamp anchor = base + static_cast<Timestamp>(rng() % static_cast<std::uint64_t>(span + w)) - w;
            const Timestamp start = align_down(std::max<Timestamp>(0, anchor), r);
            const Timestamp end = std::min(kTimeEnd, start + w * static_cast<Timestamp>(1 + rng() % 1500));
            auto reply = sync::aligned_windows(t, {id, start, end, r, kLatestVersion});
            const auto lo = std::lower_bound(pts.begin(), pts.end(), start,
                                             [](const RawPoint& p, Timestamp v) { return p.time < v; });
            const auto hi = std::lower_bound(lo, pts.end(), end, [](const RawPoint& p, Timestamp v) { return p.time < v; });
            const auto want = oracle::bucket(std::vector<RawPoint>(lo, hi), start, end, r);
            std::string why;
            if (!matches_oracle(reply.summaries, want, &why)) {
                failure = fmt("stream ", s, " query ", q, " r=", r, ": ", why);
                break;
            }
            ++queries;
            windows += want.size();
        }
    }
    const double elapsed = now_s() - t0;
    const bool pass = failure.empty() && elapsed <= kOracleBudgetS;
    report(name, pass,
           failure.empty() ? fmt(queries, " queries over ", kOracleStreams, " streams, ", windows,
                                 " windows exact, mean rel tol ", kMeanRelTol, ", ", elapsed, " s (limit ",
                                 kOracleBudgetS, " s)")
                           : failure);
}

struct SnapshotStream {
    StreamId id;
    std::vector<VersionId> versions;
    std::vector<std::vector<RawPoint>> contents;
};

SnapshotStream build_snapshots(Transport& t) {
    SnapshotStream s;
    s.id = stream_number(2000);
    std::mt19937_64 rng(202);
    std::vector<RawPoint> all;
    sync::insert(t, {s.id, {}, true});
    for (int b = 0; b < kSnapshotBatches; ++b) {
        // Later batches land over and between earlier ones.
        const Timestamp base = Timestamp{1} << 40;
        const Timestamp span = Timestamp{1} << (30 + rng() % 8);
        const Timestamp offset = static_cast<Timestamp>(rng() % (std::uint64_t{1} << 38));
        auto batch = oracle::random_points(rng, 500 + rng() % 5000, base + offset, span);
        all.insert(all.end(), batch.begin(), batch.end());
        s.versions.push_back(sync::insert(t, {s.id, std::move(batch), false}));
        s.contents.push_back(all);
    }
    return s;
}

void cow_snapshots(Transport& t, const SnapshotStream& s) {
    const std::string name = "copy-on-write-snapshots";
    if (!selected(name)) return;
    std::mt19937_64 rng(203);
    std::string failure;
    int checks = 0;
    for (std::size_t v = 0; v < s.versions.size() && failure.empty(); ++v) {
        const auto raw = sync::raw_values(t, {s.id, 0, kTimeEnd, s.versions[v]});
        if (raw.version != s.versions[v] ||
            sorted_by_time_value(raw.points) != sorted_by_time_value(s.contents[v])) {
            failure = fmt("raw values differ at version ", s.versions[v]);
            break;
        }
        ++checks;
        for (int q = 0; q < 10; ++q) {
            const int r = 20 + static_cast<int>(rng() % 20);
            const Timestamp start = align_down((Timestamp{1} << 40) + static_cast<Timestamp>(rng() % (Timestamp{1} << 38)), r);
            const Timestamp end = start + window_width(r) * static_cast<Timestamp>(1 + rng() % 1000);
            const auto reply = sync::aligned_windows(t, {s.id, start, end, r, s.versions[v]});
            std::string why;
            if (!matches_oracle(reply.summaries, oracle::bucket(s.contents[v], start, end, r), &why)) {
                failure = fmt("version ", s.versions[v], " r=", r, ": ", why);
                break;
            }
            ++checks;
        }
    }
    report(name, failure.empty(),
           failure.empty() ? fmt(kSnapshotBatches, " versions, ", checks, " historical queries match per-version oracles")
                           : failure);
}

void changes_coverage(Transport& t, const SnapshotStream& s) {
    const std::string name = "changes-coverage";
    if (!selected(name)) return;
    std::mt19937_64 rng(303);
    std::string failure;
    std::uint64_t differing = 0;
    std::uint64_t ranges = 0;
    for (int k = 0; k < kVersionPairs && failure.empty(); ++k) {
        std::size_t a = rng() % s.versions.size();
        std::size_t b = rng() % s.versions.size();
        if (a == b) b = (a + 1) % s.versions.size();
        if (a > b) std::swap(a, b);
        const int r = static_cast<int>(rng() % 41);
        const auto reply = sync::changes(t, {s.id, s.versions[a], s.versions[b], r});
        for (const auto& c : reply.ranges) {
            if (!is_aligned(c.start, r) || !is_aligned(c.end, r) || c.width() < window_width(r)) {
                failure = fmt("range [", c.start, ", ", c.end, ") not aligned to r=", r);
            }
        }
        for (Timestamp d : oracle::differing_times(s.contents[a], s.contents[b])) {
            ++differing;
            const bool covered = std::any_of(reply.ranges.begin(), reply.ranges.end(),
                                             [&](const TimeRange& c) { return c.start <= d && d < c.end; });
            if (!covered) {
                failure = fmt("versions ", s.versions[a], "->", s.versions[b], " r=", r, ": time ", d, " not covered");
                break;
            }
        }
        ranges += reply.ranges.size();
    }
    report(name, failure.empty(),
           failure.empty() ? fmt(kVersionPairs, " version pairs, ", differing, " differing timestamps covered by ",
                                 ranges, " aligned ranges")
                           : failure);
}

// ---------------------------------------------------------------------------

struct ScaleStreams {
    StreamId small = stream_number(3000);
    StreamId large = stream_number(3001);
    bool ok = false;
};

ScaleStreams ingest_scale(Transport& t, double* ingest_s) {
    ScaleStreams s;
    const double t0 = now_s();
    harness::GenerateConfig cfg;
    cfg.span_ns = harness::kThreeWeeksNs;
    cfg.points = kSmallPoints;
    cfg.seed = 7;
    harness::generate_stream(t, s.small, cfg);
    cfg.points = kLargePoints;
    cfg.seed = 8;
    harness::generate_stream(t, s.large, cfg);
    *ingest_s = now_s() - t0;
    s.ok = true;
    return s;
}

void scale_independence(Transport& t, store::Database& db, const ScaleStreams& s, double ingest_s) {
    const std::string name = "scale-independence";
    if (!selected(name)) return;
    const double t0 = now_s();
    const auto small = harness::overview_benchmark(t, s.small, kOverviewWidth, 21, &db);
    const auto large = harness::overview_benchmark(t, s.large, kOverviewWidth, 21, &db);
    const double total_s = ingest_s + now_s() - t0;
    const double ratio = large.warm_median_ms / std::max(small.warm_median_ms, 1e-3);
    const bool pass = ratio <= kScaleRatioMax && small.warm_median_ms < kOverviewMaxMs &&
                      large.warm_median_ms < kOverviewMaxMs && total_s <= kScaleBudgetS;
    report(name, pass,
           fmt("warm overview 1e5: ", small.warm_median_ms, " ms (", small.summaries, " summaries, cold ",
               small.cold_ms, " ms), 1e7: ", large.warm_median_ms, " ms (", large.summaries, " summaries, cold ",
               large.cold_ms, " ms), ratio ", ratio, " (limit ", kScaleRatioMax, "), ingest+bench ", total_s, " s"));
}

harness::ZoomReport zoom(Transport& t, const StreamId& id, bool prefetch, double think_ms) {
    harness::WorkloadConfig wl;
    wl.trials = kZoomTrials;
    wl.think_ms = think_ms;
    wl.prefetch = prefetch;
    wl.seed = 1;
    return harness::run_zoom_workload(t, id, wl);
}

std::string describe(const harness::MetricsSummary& s) {
    auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string("n/a"); };
    return fmt("miss rate ", s.miss_rate, " (", s.misses, "/", s.hits + s.misses, "), p50 ", opt(s.p50), " p95 ",
               opt(s.p95), " p99 ", opt(s.p99), " ms");
}

int partial_trials(const harness::ZoomReport& r) {
    return static_cast<int>(std::count_if(r.trials.begin(), r.trials.end(), [](const auto& t) { return t.partial; }));
}

void zoom_criteria(Transport& t, const StreamId& large, std::vector<harness::ZoomReport>& hit_sources) {
    const bool want_penalty = selected("miss-penalty");
    const bool want_prefetch = selected("prefetch-benefit");
    if (!want_penalty && !want_prefetch && !selected("hit-time")) return;

    const auto off = zoom(t, large, false, 300);
    if (want_penalty) {
        const auto& s = off.summary;
        const bool pass = s.p95 && *s.p95 < kMissP95MaxMs && s.resolved_misses == s.misses && partial_trials(off) == 0;
        report("miss-penalty", pass, fmt("prefetch off, think 300 ms, ", kZoomTrials, " trials: ", describe(s),
                                         " (p95 limit ", kMissP95MaxMs, " ms)"));
    }
    const auto on = zoom(t, large, true, 300);
    hit_sources.push_back(on);
    if (want_prefetch) {
        const auto& a = off.summary;
        const auto& b = on.summary;
        const bool pass = b.miss_rate < a.miss_rate && a.p99 && b.p99 && *b.p99 < *a.p99;
        report("prefetch-benefit", pass, fmt("think 300 ms, same seeds. off: ", describe(a), "; on: ", describe(b)));
    }
}

void flaky_criterion(Transport& t, const StreamId& large, std::vector<harness::ZoomReport>& hit_sources) {
    const std::string name = "flaky-network";
    if (!selected(name) && !selected("hit-time")) return;
    harness::FlakyNetConfig cfg;
    cfg.delay_mean_ms = 200;
    cfg.delay_jitter_ms = 20;
    cfg.drop_rate = 0.02;
    cfg.seed = 1;
    harness::FlakyTransport flaky(t, cfg);
    const auto on = zoom(flaky, large, true, 500);
    hit_sources.push_back(on);
    if (!selected(name)) return;
    const auto& s = on.summary;
    std::uint64_t early = 0;
    for (const auto& trial : on.trials) {
        for (const auto& l : trial.lookups) early += l.penalty_ms && *l.penalty_ms < kFlakyEarlyMs;
    }
    const bool pass = early > 0;
    report(name, pass,
           fmt("N(200, 20) ms per leg, 2% drop, prefetch on, think 500 ms: ", describe(s), ", ", early,
               " misses under ", kFlakyEarlyMs, " ms (min ", s.min_penalty_ms.value_or(-1), " ms), ",
               flaky.messages_dropped(), " messages dropped, ", flaky.resends(), " resends"));
}

void hit_time(const std::vector<harness::ZoomReport>& sources) {
    const std::string name = "hit-time";
    if (!selected(name)) return;
    std::vector<harness::TrialTrace> all;
    for (const auto& r : sources) all.insert(all.end(), r.trials.begin(), r.trials.end());
    const auto s = harness::summarize(all);
    const bool pass = s.hits > 0 && s.hits_within_1ms >= kHitFastShareMin && s.max_hit_ms <= kHitMaxMs;
    report(name, pass,
           fmt(s.hits, " hits, ", s.hits_within_1ms * 100, "% within 1 ms (min ", kHitFastShareMin * 100,
               "%), max ", s.max_hit_ms, " ms (limit ", kHitMaxMs, " ms)"));
}

// ---------------------------------------------------------------------------

void overplot_bound() {
    const std::string name = "overplot-bound";
    if (!selected(name)) return;
    std::mt19937_64 rng(404);
    int checked = 0;
    int violations = 0;
    while (checked < kOverplotViews) {
        ViewState v;
        v.width_px = 1 + static_cast<int>(rng() % 4000);
        const int bits = 1 + static_cast<int>(rng() % 62);
        const Timestamp span = 1 + static_cast<Timestamp>(rng() % (std::uint64_t{1} << bits));
        v.t0 = static_cast<Timestamp>(rng() % static_cast<std::uint64_t>(kTimeEnd - span + 1));
        v.t1 = v.t0 + span;
        if (!resolution_unclamped(v)) continue;
        ++checked;
        const auto windows = static_cast<__int128>(span) >> choose_resolution(v);
        if (windows < v.width_px || windows >= 2 * static_cast<__int128>(v.width_px)) ++violations;
    }
    report(name, violations == 0, fmt(checked, " unclamped views, ", violations, " outside [widthPx, 2 widthPx)"));
}

void entry_bound(store::Database& db, const StreamId& id) {
    const std::string name = "entry-bound";
    if (!selected(name)) return;
    std::mt19937_64 rng(505);
    const Timestamp t_begin = db.nearest(id, -1, Direction::Forward).value.time;
    const Timestamp t_end = db.nearest(id, kTimeEnd - 1, Direction::Backward).value.time + 1;
    const Timestamp extent = t_end - t_begin;
    std::size_t worst = 0;
    std::uint64_t gestures = 0;
    for (int trace = 0; trace < kGestureTraces; ++trace) {
        testing::QueuedTransport q(db);
        testing::FakeClock clock;
        ViewController c(q, {.prefetch = trace % 2 == 0, .changes_poll_ms = 0}, clock.fn());
        c.set_streams({id});
        Timestamp t0 = t_begin;
        Timestamp span = extent;
        for (int g = 0; g < kGesturesPerTrace; ++g) {
            const double u = std::uniform_real_distribution<double>(0, 1)(rng);
            if (u < 0.45) {
                t0 += static_cast<Timestamp>(std::uniform_real_distribution<double>(-0.7, 0.7)(rng) *
                                             static_cast<double>(span));
            } else if (u < 0.75) {
                const auto zoom = std::uniform_real_distribution<double>(1.2, 4.0)(rng);
                const auto keep = static_cast<Timestamp>(static_cast<double>(span) / zoom);
                t0 += static_cast<Timestamp>(std::uniform_real_distribution<double>(0, 1)(rng) *
                                             static_cast<double>(span - keep));
                span = std::max<Timestamp>(1'000'000, keep);
            } else {
                const auto zoom = std::uniform_real_distribution<double>(1.2, 4.0)(rng);
                const auto grow = static_cast<Timestamp>(static_cast<double>(span) * zoom);
                t0 -= (grow - span) / 2;
                span = std::min<Timestamp>(extent * 2, grow);
            }
            t0 = std::clamp<Timestamp>(t0, t_begin - extent / 2, t_end);
            ViewState v;
            v.t0 = t0;
            v.t1 = t0 + span;
            v.width_px = 1000;
            c.set_view(v);
            clock.now += std::uniform_real_distribution<double>(0, 600)(rng);
            q.deliver_random(rng, rng() % 5);
            c.tick();
            worst = std::max(worst, c.on_screen(id)->entries.size());
            ++gestures;
        }
    }
    report(name, worst <= kMaxOnScreen,
           fmt(gestures, " gestures in ", kGestureTraces, " traces, at most ", worst, " on-screen entries (limit ",
               kMaxOnScreen, ")"));
}

void fast_data(Transport& t) {
    const std::string name = "fast-data-invalidation";
    if (!selected(name)) return;
    const auto id = stream_number(4000);
    std::mt19937_64 rng(606);
    const Timestamp quarter = Timestamp{1} << 36;
    auto pts = oracle::random_points(rng, 200'000, 0, 4 * quarter);
    insert_all(t, id, pts);

    ViewController c(t, {.prefetch = false, .changes_poll_ms = 0, .change_resolution_offset = 6});
    c.set_streams({id});
    auto show = [&](Timestamp a, Timestamp b) {
        ViewState v;
        v.t0 = a;
        v.t1 = b;
        v.width_px = 1000;
        c.set_view(v);
        return settle(c) && c.view_complete();
    };
    bool ok = show(0, 4 * quarter);
    for (int k = 0; k < 4; ++k) ok &= show(k * quarter, (k + 1) * quarter);
    ok &= show(2 * quarter, 3 * quarter);
    const int r = c.resolution();
    std::map<EntryId, TimeRange> before;
    for (const auto& e : c.cache().entries(id, r)) before[e->id] = e->range();

    const RawPoint late{2 * quarter + 12345, 1e6};
    const auto v_new = sync::insert(t, {id, {late}, false});
    pts.push_back(late);
    ok &= c.refresh_changes(id);
    ok &= settle(c);
    const auto changed = sync::changes(t, {id, v_new - 1, v_new, std::min(kMaxResolution, r + 6)}).ranges;

    std::size_t kept = 0;
    std::size_t dropped = 0;
    std::string failure;
    for (const auto& [eid, range] : before) {
        const bool touched = std::any_of(changed.begin(), changed.end(), [&](const TimeRange& x) { return x.overlaps(range); });
        const bool present = c.cache().find(eid) != nullptr;
        if (touched && present) failure = fmt("entry [", range.start, ", ", range.end, ") survived a change");
        if (!touched && !present) failure = fmt("untouched entry [", range.start, ", ", range.end, ") was dropped");
        kept += present;
        dropped += !present;
    }
    const auto* shown = c.on_screen(id);
    bool refreshed = ok && shown != nullptr && !shown->entries.empty() && c.view_complete();
    for (const auto& e : shown ? shown->entries : std::vector<EntryPtr>{}) {
        std::string why;
        if (e->version != v_new) {
            failure = fmt("on-screen entry at version ", e->version, ", expected ", v_new);
        } else if (!matches_oracle(e->summaries, oracle::bucket(pts, e->start, e->end, r), &why)) {
            failure = "refetched summaries: " + why;
        }
    }
    const bool pass = refreshed && failure.empty() && kept > 0 && dropped > 0;
    report(name, pass,
           failure.empty() ? fmt("late point at ", late.time, ": ", dropped, " entries refetched at version ", v_new,
                                 " and match the oracle, ", kept, " untouched entries kept")
                           : failure);
}

}  // namespace

int main(int argc, char** argv) {
    bool keep = false;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--keep") {
            keep = true;
        } else {
            g_filters.push_back(a);
        }
    }
    const auto dir = std::filesystem::temp_directory_path() /
                     ("strata-acceptance-" + std::to_string(static_cast<long long>(::getpid())));
    std::filesystem::create_directories(dir);
    std::cout << "store " << dir.string() << std::endl;
    try {
        auto db = store::Database::open_directory(dir);
        service::QueryService svc(*db);
        service::HttpServer server(svc);
        const int port = server.start("127.0.0.1", 0);
        HttpTransport http("127.0.0.1", port);

        oracle_equivalence(http);
        if (selected("copy-on-write") || selected("changes-coverage")) {
            const auto snapshots = build_snapshots(http);
            cow_snapshots(http, snapshots);
            changes_coverage(http, snapshots);
        }
        const bool need_scale = selected("scale") || selected("miss-penalty") || selected("prefetch") ||
                                selected("flaky") || selected("hit-time") || selected("entry-bound");
        if (need_scale) {
            double ingest_s = 0;
            const auto streams = ingest_scale(http, &ingest_s);
            std::cout << "ingested " << kSmallPoints << " + " << kLargePoints << " points in " << ingest_s << " s"
                      << std::endl;
            scale_independence(http, *db, streams, ingest_s);
            std::vector<harness::ZoomReport> hit_sources;
            zoom_criteria(http, streams.large, hit_sources);
            flaky_criterion(http, streams.large, hit_sources);
            hit_time(hit_sources);
            entry_bound(*db, streams.small);
        }
        overplot_bound();
        fast_data(http);
        server.stop();
    } catch (const std::exception& e) {
        report("harness", false, e.what());
    }
    if (!keep) std::filesystem::remove_all(dir);

    const auto failed = std::count_if(g_outcomes.begin(), g_outcomes.end(), [](const Outcome& o) { return !o.pass; });
    std::cout << g_outcomes.size() - static_cast<std::size_t>(failed) << "/" << g_outcomes.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
