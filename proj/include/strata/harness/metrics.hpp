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

#include <json.hpp>

#include <optional>
#include <vector>

namespace strata::harness {

/// Nearest-rank percentile: the ceil(p/100 * n)-th smallest sample.
std::optional<double> nearest_rank(std::vector<double> samples, double p);

struct LookupSample {
    double t_ms = 0.0;  // relative to trial start
    bool hit = false;
    double lookup_ms = 0.0;
    std::optional<double> penalty_ms;
};

struct TrialTrace {
    std::vector<TimeRange> views;
    std::vector<LookupSample> lookups;
    bool partial = false;
    std::string error;
};

struct MetricsSummary {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    double miss_rate = 0.0;
    std::uint64_t resolved_misses = 0;
    std::optional<double> p50;
    std::optional<double> p95;
    std::optional<double> p99;
    std::optional<double> min_penalty_ms;
    double max_hit_ms = 0.0;
    /// Fraction of hits whose lookup took at most 1 ms.
    double hits_within_1ms = 1.0;
};

MetricsSummary summarize(const std::vector<TrialTrace>& trials);

nlohmann::json trial_to_json(const TrialTrace& t);
nlohmann::json summary_to_json(const MetricsSummary& s);
/// Rebuilds trial traces from their JSON form.
std::vector<TrialTrace> trials_from_json(const nlohmann::json& per_trial);

}  // namespace strata::harness
