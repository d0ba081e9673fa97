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

#include "strata/harness/workload.hpp"

#include "strata/store/database.hpp"

#include <algorithm>
#include <random>

namespace strata::harness {

using namespace client;
using nlohmann::json;

void generate_points(const GenerateConfig& config, const std::function<void(std::vector<RawPoint>&)>& sink) {
    if (config.points == 0) return;
    std::mt19937_64 rng(config.seed);
    const int gaps = config.gap_fraction > 0 ? std::max(config.gaps, 0) : 0;
    const long double span = static_cast<long double>(config.span_ns);
    const long double gap_len = gaps > 0 ? span * config.gap_fraction / gaps : 0.0L;
    const long double live = span - gap_len * gaps;
    std::vector<long double> gap_at;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int g = 0; g < gaps; ++g) gap_at.push_back(static_cast<long double>(unit(rng)) * live);
    std::sort(gap_at.begin(), gap_at.end());

    const long double spacing = live / static_cast<long double>(config.points);
    std::normal_distribution<double> step(0.0, 1.0);
    double value = 0.0;
    std::size_t next_gap = 0;
    std::vector<RawPoint> batch;
    batch.reserve(config.batch);
    for (std::uint64_t i = 0; i < config.points; ++i) {
        const long double pos = (static_cast<long double>(i) + 0.5L * unit(rng)) * spacing;
        while (next_gap < gap_at.size() && gap_at[next_gap] <= pos) ++next_gap;
        const long double t = pos + gap_len * static_cast<long double>(next_gap);
        value += step(rng);
        batch.push_back({config.start_ns + static_cast<Timestamp>(t), value});
        if (batch.size() == config.batch) {
            sink(batch);
            batch.clear();
        }
    }
    if (!batch.empty()) sink(batch);
}

GenerateResult generate_stream(Transport& transport, const StreamId& id, const GenerateConfig& config) {
    GenerateResult out;
    out.first = std::numeric_limits<Timestamp>::max();
    out.last = std::numeric_limits<Timestamp>::min();
    out.version = sync::insert(transport, {id, {}, true});
    generate_points(config, [&](std::vector<RawPoint>& batch) {
        for (const auto& p : batch) {
            out.first = std::min(out.first, p.time);
            out.last = std::max(out.last, p.time);
        }
        out.points += batch.size();
        out.version = sync::insert(transport, {id, batch, true});
    });
    if (out.points == 0) out.first = out.last = 0;
    return out;
}

TimeRange stream_extent(Transport& transport, const StreamId& id) {
    const auto first = sync::nearest(transport, {id, -1, Direction::Forward, kLatestVersion});
    const auto last = sync::nearest(transport, {id, kTimeEnd - 1, Direction::Backward, first.version});
    return {first.point.time, last.point.time + 1};
}

std::vector<std::vector<ViewState>> zoom_script(TimeRange extent, const WorkloadConfig& config) {
    std::vector<std::vector<ViewState>> out;
    for (int trial = 0; trial < config.trials; ++trial) {
        std::mt19937_64 rng(config.seed * 1'000'003ULL + static_cast<std::uint64_t>(trial));
        std::vector<ViewState> views;
        ViewState v;
        v.t0 = extent.start;
        v.t1 = std::max(extent.end, extent.start + 1);
        v.width_px = config.width_px;
        views.push_back(v);
        for (int i = 0; i < config.iterations; ++i) {
            std::uniform_int_distribution<Timestamp> pick(v.t0, v.t1 - 1);
            const long double focus = static_cast<long double>(pick(rng));
            const long double z = config.zoom_factor;
            const long double a = focus - (focus - static_cast<long double>(v.t0)) / z;
            const long double b = focus + (static_cast<long double>(v.t1) - focus) / z;
            ViewState next = v;
            next.t0 = static_cast<Timestamp>(a);
            next.t1 = std::max(static_cast<Timestamp>(b), next.t0 + 1);
            v = next;
            views.push_back(v);
        }
        out.push_back(std::move(views));
    }
    return out;
}

namespace {

void pump(ViewController& c, double ms) {
    const double deadline = steady_now_ms() + ms;
    do {
        c.wait_for_events(deadline);
        c.tick();
    } while (steady_now_ms() < deadline);
}

template <typename Pred>
bool pump_until(ViewController& c, Pred done, double timeout_ms) {
    const double deadline = steady_now_ms() + timeout_ms;
    c.tick();
    while (!done()) {
        if (steady_now_ms() >= deadline) return false;
        c.wait_for_events(std::min(deadline, steady_now_ms() + 50.0));
        c.tick();
    }
    return true;
}

}  // namespace

ZoomReport run_zoom_workload(Transport& transport, const StreamId& id, const WorkloadConfig& config) {
    ZoomReport report;
    report.config = config;
    const auto extent = stream_extent(transport, id);
    const auto scripts = zoom_script(extent, config);
    for (const auto& script : scripts) {
        TrialTrace trace;
        for (const auto& v : script) trace.views.push_back({v.t0, v.t1});

        ControllerOptions opts;
        opts.prefetch = config.prefetch;
        opts.changes_poll_ms = 0;
        ViewController c(transport, opts);
        c.set_streams({id});
        const double trial_start = steady_now_ms();
        c.set_view(script.front());
        if (!pump_until(c, [&] { return c.view_complete(); }, config.overview_timeout_ms)) {
            trace.partial = true;
            trace.error = "overview did not load";
            report.trials.push_back(std::move(trace));
            continue;
        }
        c.clear_lookups();
        pump(c, config.think_ms);
        for (std::size_t i = 1; i < script.size(); ++i) {
            pump(c, config.mouse_move_ms);
            c.set_view(script[i]);
            pump(c, config.think_ms);
        }
        if (!pump_until(c, [&] { return c.idle(); }, config.settle_ms)) trace.partial = true;
        if (c.stats().failures > 0) {
            trace.partial = true;
            trace.error = std::to_string(c.stats().failures) + " requests failed after retry";
        }
        for (const auto& r : c.lookups()) {
            trace.lookups.push_back({r.t_ms - trial_start, r.hit, r.lookup_ms, r.penalty_ms});
        }
        report.trials.push_back(std::move(trace));
    }
    report.summary = summarize(report.trials);
    return report;
}

json report_to_json(const ZoomReport& report) {
    const auto& c = report.config;
    json per_trial = json::array();
    for (const auto& t : report.trials) per_trial.push_back(trial_to_json(t));
    return {{"config",
             {{"thinkMs", c.think_ms},
              {"trials", c.trials},
              {"zoomFactor", c.zoom_factor},
              {"iterations", c.iterations},
              {"mouseMoveMs", c.mouse_move_ms},
              {"seed", c.seed},
              {"widthPx", c.width_px},
              {"prefetch", c.prefetch},
              {"flaky", report.flaky}}},
            {"perTrial", std::move(per_trial)},
            {"summary", summary_to_json(report.summary)}};
}

OverviewResult overview_benchmark(Transport& transport, const StreamId& id, int width_px, int repeats,
                                  store::Database* server_db) {
    OverviewResult out;
    double t = steady_now_ms();
    const auto extent = stream_extent(transport, id);
    out.nearest_ms = steady_now_ms() - t;

    ViewState view;
    view.t0 = extent.start;
    view.t1 = extent.end;
    view.width_px = width_px;
    out.resolution = choose_resolution(view);
    const auto range = align_request_range(view.t0, view.t1, out.resolution);
    for (int k = 0; k < std::max(repeats, 1); ++k) {
        if (k == 0 && server_db != nullptr) server_db->node_cache().clear();
        t = steady_now_ms();
        auto reply = sync::aligned_windows(transport, {id, range.start, range.end, out.resolution, kLatestVersion});
        out.samples_ms.push_back(steady_now_ms() - t);
        out.summaries = reply.summaries.size();
    }
    out.cold_ms = out.samples_ms.front();
    if (out.samples_ms.size() > 1) {
        std::vector<double> warm(out.samples_ms.begin() + 1, out.samples_ms.end());
        out.warm_median_ms = *nearest_rank(warm, 50);
    } else {
        out.warm_median_ms = out.cold_ms;
    }
    return out;
}

}  // namespace strata::harness
