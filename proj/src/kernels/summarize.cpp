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

#include "strata/kernels/summarize.hpp"

#include <omp.h>

namespace strata::kernels {

namespace {

void summarize_into(std::span<const RawPoint> sorted, int resolution, std::vector<WindowAggregate>& out) {
    for (const auto& p : sorted) {
        Timestamp w = align_down(p.time, resolution);
        if (out.empty() || out.back().start != w) {
            out.push_back({w, {}});
        }
        out.back().agg.add(p.value);
    }
}

}  // namespace

namespace serial {

std::vector<WindowAggregate> summarize_windows(std::span<const RawPoint> sorted, int resolution) {
    std::vector<WindowAggregate> out;
    summarize_into(sorted, resolution, out);
    return out;
}

}  // namespace serial

namespace omp {

std::vector<WindowAggregate> summarize_windows(std::span<const RawPoint> sorted, int resolution) {
    const std::size_t n = sorted.size();
    const int threads = std::max(1, omp_get_max_threads());
    std::vector<std::vector<WindowAggregate>> parts(static_cast<std::size_t>(threads));

#pragma omp parallel num_threads(threads)
    {
        const auto tid = static_cast<std::size_t>(omp_get_thread_num());
        const auto nt = static_cast<std::size_t>(omp_get_num_threads());
        const std::size_t lo = n * tid / nt;
        const std::size_t hi = n * (tid + 1) / nt;
        summarize_into(sorted.subspan(lo, hi - lo), resolution, parts[tid]);
    }

    std::vector<WindowAggregate> out;
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    out.reserve(total);
    for (auto& part : parts) {
        for (auto& w : part) {
            if (!out.empty() && out.back().start == w.start) {
                out.back().agg.merge(w.agg);
            } else {
                out.push_back(w);
            }
        }
    }
    return out;
}

}  // namespace omp

std::vector<WindowAggregate> summarize_windows(std::span<const RawPoint> sorted, int resolution) {
    if (sorted.size() >= kParallelThreshold) {
        return omp::summarize_windows(sorted, resolution);
    }
    return serial::summarize_windows(sorted, resolution);
}

Aggregate aggregate_points(std::span<const RawPoint> points) noexcept {
    Aggregate agg;
    for (const auto& p : points) agg.add(p.value);
    return agg;
}

}  // namespace strata::kernels
