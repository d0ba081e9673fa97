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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace strata {

/// Nanoseconds since the epoch. Valid stored timestamps lie in [0, kTimeEnd).
using Timestamp = std::int64_t;

/// Stream version. Zero means "latest" at API boundaries only.
using VersionId = std::uint64_t;

inline constexpr VersionId kLatestVersion = 0;

inline constexpr int kTimeBits = 62;
inline constexpr Timestamp kTimeBegin = 0;
inline constexpr Timestamp kTimeEnd = Timestamp{1} << kTimeBits;
inline constexpr int kMaxResolution = 61;

constexpr bool in_time_domain(Timestamp t) noexcept { return t >= kTimeBegin && t < kTimeEnd; }

constexpr Timestamp window_width(int resolution) noexcept { return Timestamp{1} << resolution; }

/// Largest multiple of 2^resolution that is <= t (t >= 0).
constexpr Timestamp align_down(Timestamp t, int resolution) noexcept {
    return t & ~(window_width(resolution) - 1);
}

/// Smallest multiple of 2^resolution that is >= t (t >= 0).
constexpr Timestamp align_up(Timestamp t, int resolution) noexcept {
    return align_down(t + window_width(resolution) - 1, resolution);
}

constexpr bool is_aligned(Timestamp t, int resolution) noexcept {
    return (t & (window_width(resolution) - 1)) == 0;
}

struct RawPoint {
    Timestamp time = 0;
    double value = 0.0;

    friend bool operator==(const RawPoint&, const RawPoint&) = default;
};

/// (start, min, mean, max, count) of the raw points in one aligned window.
struct StatSummary {
    Timestamp start = 0;
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;
    std::uint64_t count = 0;

    friend bool operator==(const StatSummary&, const StatSummary&) = default;
};

/// Mergeable min/sum/max/count accumulator. Means are derived from the sum
/// on read.
struct Aggregate {
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    std::uint64_t count = 0;

    void add(double v) noexcept {
        min = std::min(min, v);
        max = std::max(max, v);
        sum += v;
        ++count;
    }

    void merge(const Aggregate& o) noexcept {
        min = std::min(min, o.min);
        max = std::max(max, o.max);
        sum += o.sum;
        count += o.count;
    }

    bool empty() const noexcept { return count == 0; }

    double mean() const noexcept {
        if (count == 0) {
            return 0.0;
        }
        // Rounding in the sum can push the quotient a hair outside [min, max].
        return std::clamp(sum / static_cast<double>(count), min, max);
    }

    StatSummary summary(Timestamp start) const noexcept { return {start, min, mean(), max, count}; }

    friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

/// 128-bit stream identifier, printed in the canonical 8-4-4-4-12 form.
struct StreamId {
    std::array<std::uint8_t, 16> bytes{};

    static std::optional<StreamId> parse(std::string_view text);
    static StreamId from_words(std::uint64_t hi, std::uint64_t lo) noexcept;
    /// Random version-4 identifier.
    static StreamId random();

    std::string to_string() const;

    friend auto operator<=>(const StreamId&, const StreamId&) = default;
    friend bool operator==(const StreamId&, const StreamId&) = default;
};

struct StreamIdHash {
    std::size_t operator()(const StreamId& id) const noexcept;
};

struct TimeRange {
    Timestamp start = 0;
    Timestamp end = 0;

    Timestamp width() const noexcept { return end - start; }
    bool empty() const noexcept { return end <= start; }
    bool overlaps(const TimeRange& o) const noexcept { return start < o.end && o.start < end; }
    bool contains(const TimeRange& o) const noexcept { return start <= o.start && o.end <= end; }

    friend bool operator==(const TimeRange&, const TimeRange&) = default;
};

enum class Direction { Forward, Backward };

}  // namespace strata
