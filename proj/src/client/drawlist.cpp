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

#include "strata/client/drawlist.hpp"

#include <algorithm>

namespace strata::client {

namespace {

struct Sequence {
    std::vector<StatSummary> items;
    bool starts_at_first = false;  // nothing before items.front() was dropped
    bool ends_at_last = false;
    bool front_is_edge = false;
    bool back_is_edge = false;
    TimeRange coverage;
};

Sequence build_sequence(const OnScreenSet& set, const ViewState& view) {
    Sequence out;
    if (set.entries.empty()) return out;
    const Timestamp w = window_width(set.resolution);
    const auto& first = *set.entries.front();
    const auto& last = *set.entries.back();
    out.coverage = {first.start, last.end};

    std::vector<StatSummary> merged;
    const bool lead_edge = first.edge_before.has_value();
    if (lead_edge) merged.push_back(*first.edge_before);
    for (const auto& e : set.entries) merged.insert(merged.end(), e->summaries.begin(), e->summaries.end());
    const bool tail_edge = last.edge_after.has_value();
    if (tail_edge) merged.push_back(*last.edge_after);

    const auto begin = std::find_if(merged.begin(), merged.end(),
                                    [&](const StatSummary& s) { return s.start + w > view.t0; });
    const auto end = std::find_if(begin, merged.end(), [&](const StatSummary& s) { return s.start >= view.t1; });
    auto lo = begin == merged.begin() ? begin : std::prev(begin);
    auto hi = end == merged.end() ? end : std::next(end);
    out.items.assign(lo, hi);
    out.starts_at_first = lo == merged.begin();
    out.ends_at_last = hi == merged.end();
    out.front_is_edge = out.starts_at_first && lead_edge && !out.items.empty();
    out.back_is_edge = out.ends_at_last && tail_edge && !out.items.empty();
    return out;
}

float offset(Timestamp t, Timestamp epoch, double extra = 0.0) {
    return static_cast<float>(static_cast<double>(t - epoch) + extra);
}

}  // namespace

std::vector<StatSummary> visible_sequence(const OnScreenSet& set, const ViewState& view) {
    return build_sequence(set, view).items;
}

DrawList build_drawlist(const std::vector<OnScreenSet>& sets, const ViewState& view, const DrawOptions& options) {
    DrawList dl;
    dl.view = view;
    dl.epoch = view.midpoint();
    for (const auto& set : sets) {
        StreamDrawing d;
        d.stream = set.stream;
        d.resolution = set.resolution;
        d.selected = options.selected && *options.selected == set.stream;
        const auto seq = build_sequence(set, view);
        const auto& items = seq.items;
        const Timestamp w = window_width(set.resolution);
        const double half = static_cast<double>(w) / 2.0;

        std::size_t i = 0;
        while (i < items.size()) {
            std::size_t j = i + 1;
            while (j < items.size() && (options.always_connect || items[j].start - items[j - 1].start == w)) ++j;
            if (j - i == 1) {
                const auto& s = items[i];
                d.lone_points.push_back({offset(s.start, dl.epoch, half), s.min, s.mean, s.max, s.min < s.max});
            } else {
                std::vector<BandPoint> strip;
                std::vector<LinePoint> line;
                for (std::size_t k = i; k < j; ++k) {
                    const auto& s = items[k];
                    const float x = offset(s.start, dl.epoch, half);
                    strip.push_back({x, s.min, s.max});
                    line.push_back({x, s.mean});
                }
                d.silhouette_strips.push_back(std::move(strip));
                d.mean_polylines.push_back(std::move(line));
            }
            i = j;
        }

        if (d.selected && !set.entries.empty()) {
            auto& steps = d.density_steps;
            if (items.empty()) {
                steps.push_back({offset(seq.coverage.start, dl.epoch), 0});
            } else {
                if (seq.starts_at_first && !seq.front_is_edge && items.front().start > seq.coverage.start) {
                    steps.push_back({offset(seq.coverage.start, dl.epoch), 0});
                }
                for (std::size_t k = 0; k < items.size(); ++k) {
                    if (k > 0 && items[k].start - items[k - 1].start > w) {
                        steps.push_back({offset(items[k - 1].start + w, dl.epoch), 0});
                    }
                    steps.push_back({offset(items[k].start, dl.epoch), items[k].count});
                }
                if (seq.ends_at_last && !seq.back_is_edge && items.back().start + w < seq.coverage.end) {
                    steps.push_back({offset(items.back().start + w, dl.epoch), 0});
                }
            }
        }
        dl.streams.push_back(std::move(d));
    }
    return dl;
}

}  // namespace strata::client
