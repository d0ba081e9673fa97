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

// Brute-force references used by the tests. They work on plain point
// vectors and share no code with the tree.

#include "strata/core/types.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

namespace strata::oracle {

struct Bucket {
    Timestamp start;
    double min;
    double max;
    long double sum;
    std::uint64_t count;
    double mean() const { return static_cast<double>(sum / count); }
};

/// Buckets every point with start <= t < end into 2^res windows.
inline std::vector<Bucket> bucket(const std::vector<RawPoint>& points, Timestamp start, Timestamp end, int res) {
    std::map<Timestamp, Bucket> m;
    const Timestamp w = Timestamp{1} << res;
    for (const auto& p : points) {
        if (p.time < start || p.time >= end) continue;
        const Timestamp k = (p.time / w) * w;
        auto [it, fresh] = m.try_emplace(k, Bucket{k, p.value, p.value, 0.0L, 0});
        auto& b = it->second;
        b.min = std::min(b.min, p.value);
        b.max = std::max(b.max, p.value);
        b.sum += p.value;
        ++b.count;
    }
    std::vector<Bucket> out;
    for (auto& [k, b] : m) out.push_back(b);
    return out;
}

/// Points in [start, end) ordered by time, ties in insertion order.
inline std::vector<RawPoint> filter_sorted(const std::vector<RawPoint>& inserted, Timestamp start, Timestamp end) {
    std::vector<RawPoint> out;
    for (const auto& p : inserted) {
        if (p.time >= start && p.time < end) out.push_back(p);
    }
    std::stable_sort(out.begin(), out.end(), [](const RawPoint& a, const RawPoint& b) { return a.time < b.time; });
    return out;
}

/// Backward: greatest time <= t. Forward: smallest time > t.
inline std::optional<Timestamp> nearest_time(const std::vector<RawPoint>& points, Timestamp t, Direction dir) {
    std::optional<Timestamp> best;
    for (const auto& p : points) {
        if (dir == Direction::Backward && p.time <= t && (!best || p.time > *best)) best = p.time;
        if (dir == Direction::Forward && p.time > t && (!best || p.time < *best)) best = p.time;
    }
    return best;
}

/// Timestamps whose multiset of values differs between two point sets.
inline std::vector<Timestamp> differing_times(const std::vector<RawPoint>& a, const std::vector<RawPoint>& b) {
    std::map<Timestamp, std::vector<double>> ma;
    std::map<Timestamp, std::vector<double>> mb;
    for (const auto& p : a) ma[p.time].push_back(p.value);
    for (const auto& p : b) mb[p.time].push_back(p.value);
    for (auto* m : {&ma, &mb}) {
        for (auto& [t, v] : *m) std::sort(v.begin(), v.end());
    }
    std::vector<Timestamp> out;
    for (const auto& [t, v] : ma) {
        auto it = mb.find(t);
        if (it == mb.end() || it->second != v) out.push_back(t);
    }
    for (const auto& [t, v] : mb) {
        if (!ma.count(t)) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Mean comparison relative to the magnitude of the window's values.
inline bool mean_close(double got, double want, double min, double max, double rel = 1e-9) {
    const double scale = std::max({std::abs(want), std::abs(min), std::abs(max), 1e-300});
    return std::abs(got - want) <= rel * scale;
}

/// Random stream: clustered timestamps inside [base, base + span), some
/// duplicates, values in [-100, 100].
inline std::vector<RawPoint> random_points(std::mt19937_64& rng, std::size_t n, Timestamp base, Timestamp span) {
    std::uniform_int_distribution<Timestamp> offset(0, span - 1);
    std::uniform_real_distribution<double> value(-100.0, 100.0);
    std::bernoulli_distribution dup(0.05);
    std::vector<RawPoint> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Timestamp t = (dup(rng) && !pts.empty()) ? pts[rng() % pts.size()].time : base + offset(rng);
        pts.push_back({t, value(rng)});
    }
    return pts;
}

}  // namespace strata::oracle
