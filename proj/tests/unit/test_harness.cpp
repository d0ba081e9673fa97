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

#include "doctest.h"

#include "strata/harness/flaky_transport.hpp"
#include "strata/harness/metrics.hpp"
#include "strata/harness/workload.hpp"
#include "strata/store/database.hpp"

#include <future>
#include <random>
#include <thread>

using namespace strata;
using namespace strata::harness;

namespace {

const StreamId kId = *StreamId::parse("00000000-0000-0000-0000-0000000000e1");

std::vector<RawPoint> collect(const GenerateConfig& cfg) {
    std::vector<RawPoint> out;
    generate_points(cfg, [&](std::vector<RawPoint>& b) { out.insert(out.end(), b.begin(), b.end()); });
    return out;
}

double timed_windows(client::Transport& t, client::WindowsQuery q) {
    std::promise<double> done;
    const double start = client::steady_now_ms();
    t.aligned_windows(q, [&](client::Result<client::WindowsReply> r) {
        CHECK(r.ok());
        done.set_value(client::steady_now_ms() - start);
    });
    return done.get_future().get();
}

}  // namespace

TEST_CASE("nearest-rank percentiles") {
    const std::vector<double> s{15, 20, 35, 40, 50};
    CHECK(nearest_rank(s, 5) == 15.0);
    CHECK(nearest_rank(s, 30) == 20.0);
    CHECK(nearest_rank(s, 40) == 20.0);
    CHECK(nearest_rank(s, 50) == 35.0);
    CHECK(nearest_rank(s, 100) == 50.0);
    CHECK(nearest_rank({3, 1, 2}, 50) == 2.0);
    CHECK_FALSE(nearest_rank({}, 50).has_value());
    std::vector<double> hundred;
    for (int i = 100; i >= 1; --i) hundred.push_back(i);
    CHECK(nearest_rank(hundred, 95) == 95.0);
    CHECK(nearest_rank(hundred, 99) == 99.0);
}

TEST_CASE("summary recomputes from serialized traces") {
    std::mt19937_64 rng(4);
    std::vector<TrialTrace> trials(3);
    std::vector<double> penalties;
    std::uint64_t hits = 0;
    for (auto& t : trials) {
        for (int i = 0; i < 17; ++i) {
            LookupSample s;
            s.t_ms = i * 400.0;
            s.hit = rng() % 3 == 0;
            s.lookup_ms = std::uniform_real_distribution<double>(0, 1.5)(rng);
            if (!s.hit && rng() % 5 != 0) {
                s.penalty_ms = std::uniform_real_distribution<double>(1, 300)(rng);
                penalties.push_back(*s.penalty_ms);
            }
            hits += s.hit;
            t.lookups.push_back(s);
        }
    }
    const auto direct = summarize(trials);
    CHECK(direct.hits == hits);
    CHECK(direct.misses == 51 - hits);
    CHECK(direct.resolved_misses == penalties.size());
    std::sort(penalties.begin(), penalties.end());
    CHECK(direct.p95 == penalties[static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(penalties.size()))) - 1]);

    nlohmann::json per_trial = nlohmann::json::array();
    for (const auto& t : trials) per_trial.push_back(trial_to_json(t));
    const auto reparsed = trials_from_json(nlohmann::json::parse(per_trial.dump()));
    const auto again = summarize(reparsed);
    CHECK(summary_to_json(again) == summary_to_json(direct));
}

TEST_CASE("generated streams") {
    GenerateConfig cfg;
    cfg.points = 0;
    CHECK(collect(cfg).empty());

    cfg.points = 5000;
    cfg.batch = 777;
    cfg.span_ns = 5'000'000;
    cfg.start_ns = 1'000;
    const auto a = collect(cfg);
    const auto b = collect(cfg);
    REQUIRE(a.size() == 5000);
    CHECK(a == b);
    cfg.seed = 2;
    CHECK(collect(cfg) != a);
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].time < a[i].time);
    CHECK(a.front().time >= 1'000);
    CHECK(a.back().time < 1'000 + 5'000'000);

    cfg.gaps = 4;
    cfg.gap_fraction = 0.5;
    const auto gapped = collect(cfg);
    Timestamp widest = 0;
    for (std::size_t i = 1; i < gapped.size(); ++i) widest = std::max(widest, gapped[i].time - gapped[i - 1].time);
    CHECK(widest >= 5'000'000 / 8);

    auto db = store::Database::open_memory();
    client::LocalTransport local(*db);
    cfg.gaps = 0;
    cfg.gap_fraction = 0;
    cfg.seed = 1;
    const auto r = generate_stream(local, kId, cfg);
    CHECK(r.points == 5000);
    CHECK(db->list_streams().at(0).point_count == 5000);
    const auto extent = stream_extent(local, kId);
    CHECK(extent.start == a.front().time);
    CHECK(extent.end == a.back().time + 1);
}

TEST_CASE("zoom scripts are independent of prefetch") {
    WorkloadConfig cfg;
    cfg.trials = 4;
    const TimeRange extent{1'000'000, 1'000'000 + kThreeWeeksNs};
    auto off = zoom_script(extent, cfg);
    cfg.prefetch = true;
    auto on = zoom_script(extent, cfg);
    REQUIRE(off.size() == 4);
    CHECK(off == on);
    CHECK(off[0] != off[1]);
    for (const auto& trial : off) {
        REQUIRE(trial.size() == 17);
        CHECK(trial[0].t0 == extent.start);
        for (std::size_t i = 1; i < trial.size(); ++i) {
            CHECK(trial[i].t0 >= trial[i - 1].t0);
            CHECK(trial[i].t1 <= trial[i - 1].t1);
            const double ratio = static_cast<double>(trial[i - 1].span()) / static_cast<double>(trial[i].span());
            CHECK(ratio == doctest::Approx(2.5).epsilon(0.01));
        }
    }
}

TEST_CASE("flaky transport delays, drops and resends") {
    auto db = store::Database::open_memory();
    db->create_stream(kId);
    std::vector<RawPoint> pts;
    for (int i = 0; i < 1000; ++i) pts.push_back({i * 64, i * 1.0});
    db->insert_batch(kId, pts);
    client::LocalTransport local(*db);
    const client::WindowsQuery q{kId, 0, 64000, 6, 0};

    FlakyNetConfig steady{.enabled = true, .delay_mean_ms = 200, .delay_jitter_ms = 0, .drop_rate = 0,
                          .timeout_ms = 1000, .seed = 1};
    {
        FlakyTransport flaky(local, steady);
        const double ms = timed_windows(flaky, q);
        CHECK(ms >= 400.0);
        CHECK(ms < 460.0);
        CHECK(flaky.messages_dropped() == 0);
    }
    {
        FlakyNetConfig off = steady;
        off.enabled = false;
        FlakyTransport flaky(local, off);
        CHECK(timed_windows(flaky, q) < 50.0);
    }
    {
        FlakyNetConfig lossy{.enabled = true, .delay_mean_ms = 2, .delay_jitter_ms = 1, .drop_rate = 0.4,
                             .timeout_ms = 30, .seed = 9};
        FlakyTransport flaky(local, lossy);
        std::atomic<int> answers{0};
        std::vector<std::future<void>> waits;
        std::vector<std::shared_ptr<std::promise<void>>> promises;
        for (int i = 0; i < 40; ++i) {
            auto p = std::make_shared<std::promise<void>>();
            waits.push_back(p->get_future());
            promises.push_back(p);
            flaky.aligned_windows(q, [&answers, p](client::Result<client::WindowsReply> r) {
                CHECK(r.ok());
                ++answers;
                p->set_value();
            });
        }
        for (auto& w : waits) CHECK(w.wait_for(std::chrono::seconds(20)) == std::future_status::ready);
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
        CHECK(answers.load() == 40);
        CHECK(flaky.messages_dropped() > 0);
        CHECK(flaky.resends() > 0);
    }
}

TEST_CASE("misses under a 200 ms one-way delay cost at least a round trip") {
    auto db = store::Database::open_memory();
    client::LocalTransport local(*db, 2);
    GenerateConfig gen;
    gen.points = 20000;
    gen.span_ns = Timestamp{1} << 40;
    generate_stream(local, kId, gen);
    FlakyTransport flaky(local, {.enabled = true, .delay_mean_ms = 200, .delay_jitter_ms = 20, .drop_rate = 0.02,
                                 .timeout_ms = 1000, .seed = 5});
    WorkloadConfig wl;
    wl.trials = 1;
    wl.iterations = 4;
    wl.think_ms = 500;
    wl.prefetch = false;
    auto report = run_zoom_workload(flaky, kId, wl);
    REQUIRE(report.trials.size() == 1);
    CHECK(report.summary.misses == 4);
    REQUIRE(report.summary.p50.has_value());
    CHECK(*report.summary.p50 >= 400.0);
    const auto j = report_to_json(report);
    CHECK(j.at("summary").at("missCount") == 4);
    CHECK(j.at("perTrial").size() == 1);
}
