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

#include "strata/client/view_controller.hpp"
#include "strata/harness/flaky_transport.hpp"
#include "strata/harness/metrics.hpp"

#include <functional>

namespace strata::store {
class Database;
}

namespace strata::harness {

inline constexpr Timestamp kThreeWeeksNs = Timestamp{21} * 24 * 3600 * 1'000'000'000;

struct GenerateConfig {
    std::uint64_t points = 10'000'000;
    Timestamp start_ns = Timestamp{1'700'000'000} * 1'000'000'000;
    Timestamp span_ns = kThreeWeeksNs;
    /// Number of empty stretches and the share of the span they remove.
    int gaps = 0;
    double gap_fraction = 0.0;
    std::uint64_t seed = 1;
    std::size_t batch = 100'000;
};

struct GenerateResult {
    std::uint64_t points = 0;
    VersionId version = 0;
    Timestamp first = 0;
    Timestamp last = 0;
};

/// Random-walk values at near-uniform spacing, ingested in batches. The
/// stream is created if needed. Identical configs produce identical streams.
GenerateResult generate_stream(client::Transport& transport, const StreamId& id, const GenerateConfig& config);

/// Calls `sink` with successive batches of generated points.
void generate_points(const GenerateConfig& config, const std::function<void(std::vector<RawPoint>&)>& sink);

struct WorkloadConfig {
    double think_ms = 300.0;
    int trials = 10;
    double zoom_factor = 2.5;
    int iterations = 16;
    double mouse_move_ms = 100.0;
    std::uint64_t seed = 1;
    int width_px = 1000;
    bool prefetch = false;
    /// Upper bound on the wait for outstanding misses after the last gesture.
    double settle_ms = 5000.0;
    /// Bound on the wait for the overview to load before gestures start.
    double overview_timeout_ms = 60000.0;
};

struct ZoomReport {
    WorkloadConfig config;
    bool flaky = false;
    std::vector<TrialTrace> trials;
    MetricsSummary summary;
};

/// Overview then `iterations` zoom gestures about random focus points, per
/// trial, each trial with a fresh controller. The overview load is setup and
/// is not part of the recorded lookups.
ZoomReport run_zoom_workload(client::Transport& transport, const StreamId& id, const WorkloadConfig& config);

/// The gesture sequence alone (views per trial) for a stream extent.
std::vector<std::vector<client::ViewState>> zoom_script(TimeRange extent, const WorkloadConfig& config);

nlohmann::json report_to_json(const ZoomReport& report);

struct OverviewResult {
    int resolution = 0;
    std::size_t summaries = 0;
    double nearest_ms = 0.0;
    double cold_ms = 0.0;
    double warm_median_ms = 0.0;
    std::vector<double> samples_ms;
};

/// Times fetching one screen of aligned windows over the stream's extent.
/// When `server_db` is given its node cache is cleared before the first run.
OverviewResult overview_benchmark(client::Transport& transport, const StreamId& id, int width_px, int repeats,
                                  store::Database* server_db = nullptr);

/// First and last point times via Nearest.
TimeRange stream_extent(client::Transport& transport, const StreamId& id);

}  // namespace strata::harness
