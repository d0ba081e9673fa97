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
#include "strata/client/view.hpp"

#include <vector>

namespace strata::client {

// x coordinates are nanosecond offsets from DrawList::epoch, small enough
// near the view to survive single precision. y values are data units.

struct BandPoint {
    float x;
    double y_min;
    double y_max;
};

struct LinePoint {
    float x;
    double y;
};

struct LonePoint {
    float x;
    double y_min;
    double y_mean;
    double y_max;
    /// False when min == max and only the mean dot is visible.
    bool has_segment;
};

/// Step-after point: the count holds from x until the next point.
struct StepPoint {
    float x;
    std::uint64_t count;
};

struct StreamDrawing {
    StreamId stream;
    int resolution = 0;
    /// Each strip and polyline is one connected run; a new one starts at a break.
    std::vector<std::vector<BandPoint>> silhouette_strips;
    std::vector<std::vector<LinePoint>> mean_polylines;
    std::vector<LonePoint> lone_points;
    /// Filled for the selected stream only.
    std::vector<StepPoint> density_steps;
    bool selected = false;
};

struct DrawList {
    Timestamp epoch = 0;
    ViewState view;
    std::vector<StreamDrawing> streams;
};

struct OnScreenSet {
    StreamId stream;
    int resolution = 0;
    /// Non-overlapping, ascending by start.
    std::vector<EntryPtr> entries;
};

struct DrawOptions {
    bool always_connect = false;
    std::optional<StreamId> selected;
};

/// Converts the summaries of each on-screen set into drawable primitives.
/// Summaries whose start differs by exactly 2^r are temporally adjacent and
/// connected; other boundaries break the silhouette and mean line. A summary
/// adjacent to neither neighbour becomes a lone point. The outer edge
/// aggregates of the set are stitched on so runs continue past the view.
DrawList build_drawlist(const std::vector<OnScreenSet>& sets, const ViewState& view, const DrawOptions& options);

/// Merged summaries of a set restricted to the view plus one neighbour each
/// side, including stitched edges.
std::vector<StatSummary> visible_sequence(const OnScreenSet& set, const ViewState& view);

}  // namespace strata::client
