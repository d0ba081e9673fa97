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

#include "strata/client/view.hpp"

#include <optional>
#include <vector>

namespace strata::client {

inline constexpr double kThrottleWindowMs = 300.0;

/// Suppresses miss-driven requests for a fixed window after the last one.
class Throttle {
public:
    explicit Throttle(double window_ms = kThrottleWindowMs) : window_ms_(window_ms) {}

    bool should_issue(double now_ms) const noexcept {
        return !last_ || now_ms - *last_ >= window_ms_;
    }
    /// Call when a cache miss actually sent a request.
    void note_issued(double now_ms) noexcept { last_ = now_ms; }
    /// Time at which should_issue next becomes true.
    double reopens_at() const noexcept { return last_ ? *last_ + window_ms_ : 0.0; }

private:
    double window_ms_;
    std::optional<double> last_;
};

struct RangeTarget {
    int resolution = 0;
    TimeRange range;
    friend bool operator==(const RangeTarget&, const RangeTarget&) = default;
};

/// Neighbourhood to prefetch once the view at r has fully arrived, before
/// subtracting anything already cached. W = t1 - t0:
///   [t0 - W, t0) and [t1, t1 + W) at r,
///   [t0, t1) at r - 1 (dropped when r = 0),
///   [t0 - W, t1 + W) at r + 1 (dropped when r = 61).
/// Ranges are clipped to the domain and rounded outward to their resolution.
std::vector<RangeTarget> plan_prefetch(const ViewState& view, int r);

}  // namespace strata::client
