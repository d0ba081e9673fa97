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

#include <span>
#include <vector>

namespace strata::kernels {

/// One aligned window's accumulator.
struct WindowAggregate {
    Timestamp start = 0;
    Aggregate agg;
};

// Bucket time-sorted points into aligned 2^resolution windows. Empty windows
// are never emitted; output is ascending by window start.

namespace serial {
std::vector<WindowAggregate> summarize_windows(std::span<const RawPoint> sorted, int resolution);
}

namespace omp {
/// Splits the input into per-thread chunks and stitches the boundary windows.
/// Produces the same windows as the serial kernel; sums may differ in the
/// last bits.
std::vector<WindowAggregate> summarize_windows(std::span<const RawPoint> sorted, int resolution);
}

/// Inputs at least this large go to the OpenMP kernel.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 16;

std::vector<WindowAggregate> summarize_windows(std::span<const RawPoint> sorted, int resolution);

/// Aggregate of a whole span of points.
Aggregate aggregate_points(std::span<const RawPoint> points) noexcept;

}  // namespace strata::kernels
