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

#include "strata/core/types.hpp"

#include <optional>
#include <vector>

namespace strata::client {

struct ViewState {
    Timestamp t0 = 0;
    Timestamp t1 = 1;
    int width_px = 1000;
    int height_px = 400;
    /// Fixed value axis; nullopt means auto-scale.
    std::optional<std::pair<double, double>> value_domain;

    Timestamp span() const noexcept { return t1 - t0; }
    Timestamp midpoint() const noexcept { return t0 + (t1 - t0) / 2; }
    bool operator==(const ViewState&) const = default;
};

/// Largest r with 2^r <= (t1 - t0) / widthPx, clamped to [0, 61].
int choose_resolution(const ViewState& view) noexcept;

/// True when choose_resolution did not need to clamp.
bool resolution_unclamped(const ViewState& view) noexcept;

/// Whole 2^r windows spanned by the view, floor((t1 - t0) / 2^r).
std::int64_t windows_in_view(const ViewState& view, int r) noexcept;

/// [t0, t1) rounded outward to multiples of 2^r and clipped to the domain.
TimeRange align_request_range(Timestamp t0, Timestamp t1, int r) noexcept;

/// The request actually sent for an aligned range: one extra window on each
/// side (inside the domain) to fetch the edge aggregates.
TimeRange with_edges(TimeRange aligned, int r) noexcept;

/// Sorted, coalesced union of ranges.
std::vector<TimeRange> merge_ranges(std::vector<TimeRange> ranges);

/// Parts of `range` not covered by any of `covered` (any order, may overlap).
std::vector<TimeRange> subtract_ranges(TimeRange range, std::vector<TimeRange> covered);

}  // namespace strata::client
