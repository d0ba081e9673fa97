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

#include "strata/client/view.hpp"

#include <algorithm>

namespace strata::client {

namespace {

int floor_log2_ratio(Timestamp span, int width) noexcept {
    // Largest r with 2^r * width <= span; -1 if span < width.
    const unsigned __int128 s = static_cast<unsigned __int128>(std::max<Timestamp>(span, 0));
    const unsigned __int128 w = static_cast<unsigned __int128>(std::max(width, 1));
    if (s < w) return -1;
    int r = 0;
    while (r < 126 && (w << (r + 1)) <= s) ++r;
    return r;
}

}  // namespace

int choose_resolution(const ViewState& view) noexcept {
    return std::clamp(floor_log2_ratio(view.span(), view.width_px), 0, kMaxResolution);
}

bool resolution_unclamped(const ViewState& view) noexcept {
    const int r = floor_log2_ratio(view.span(), view.width_px);
    return r >= 0 && r <= kMaxResolution;
}

std::int64_t windows_in_view(const ViewState& view, int r) noexcept { return view.span() >> r; }

TimeRange align_request_range(Timestamp t0, Timestamp t1, int r) noexcept {
    const Timestamp s = std::clamp(t0, kTimeBegin, kTimeEnd);
    const Timestamp e = std::clamp(t1, kTimeBegin, kTimeEnd);
    return {align_down(s, r), std::min(align_up(e, r), kTimeEnd)};
}

TimeRange with_edges(TimeRange aligned, int r) noexcept {
    const Timestamp w = window_width(r);
    return {aligned.start >= w ? aligned.start - w : kTimeBegin,
            aligned.end <= kTimeEnd - w ? aligned.end + w : kTimeEnd};
}

std::vector<TimeRange> merge_ranges(std::vector<TimeRange> ranges) {
    std::erase_if(ranges, [](const TimeRange& r) { return r.empty(); });
    std::sort(ranges.begin(), ranges.end(), [](const TimeRange& a, const TimeRange& b) { return a.start < b.start; });
    std::vector<TimeRange> out;
    for (const auto& r : ranges) {
        if (!out.empty() && r.start <= out.back().end) {
            out.back().end = std::max(out.back().end, r.end);
        } else {
            out.push_back(r);
        }
    }
    return out;
}

std::vector<TimeRange> subtract_ranges(TimeRange range, std::vector<TimeRange> covered) {
    std::vector<TimeRange> out;
    Timestamp cursor = range.start;
    for (const auto& c : merge_ranges(std::move(covered))) {
        if (c.end <= cursor) continue;
        if (c.start >= range.end) break;
        if (c.start > cursor) out.push_back({cursor, c.start});
        cursor = std::max(cursor, c.end);
        if (cursor >= range.end) break;
    }
    if (cursor < range.end) out.push_back({cursor, range.end});
    return out;
}

}  // namespace strata::client
