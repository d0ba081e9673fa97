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

#include "strata/harness/metrics.hpp"

#include "strata/service/json_codec.hpp"

#include <algorithm>
#include <cmath>

namespace strata::harness {

using nlohmann::json;

std::optional<double> nearest_rank(std::vector<double> samples, double p) {
    if (samples.empty()) return std::nullopt;
    std::sort(samples.begin(), samples.end());
    const auto n = static_cast<double>(samples.size());
    auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
    rank = std::clamp<std::size_t>(rank, 1, samples.size());
    return samples[rank - 1];
}

MetricsSummary summarize(const std::vector<TrialTrace>& trials) {
    MetricsSummary s;
    std::vector<double> penalties;
    std::uint64_t fast_hits = 0;
    for (const auto& t : trials) {
        for (const auto& l : t.lookups) {
            if (l.hit) {
                ++s.hits;
                s.max_hit_ms = std::max(s.max_hit_ms, l.lookup_ms);
                if (l.lookup_ms <= 1.0) ++fast_hits;
            } else {
                ++s.misses;
                if (l.penalty_ms) penalties.push_back(*l.penalty_ms);
            }
        }
    }
    const auto total = s.hits + s.misses;
    s.miss_rate = total == 0 ? 0.0 : static_cast<double>(s.misses) / static_cast<double>(total);
    s.resolved_misses = penalties.size();
    s.p50 = nearest_rank(penalties, 50);
    s.p95 = nearest_rank(penalties, 95);
    s.p99 = nearest_rank(penalties, 99);
    if (!penalties.empty()) s.min_penalty_ms = *std::min_element(penalties.begin(), penalties.end());
    s.hits_within_1ms = s.hits == 0 ? 1.0 : static_cast<double>(fast_hits) / static_cast<double>(s.hits);
    return s;
}

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json trial_to_json(const TrialTrace& t) {
    json views = json::array();
    for (const auto& v : t.views) views.push_back(service::range_to_json(v));
    json lookups = json::array();
    for (const auto& l : t.lookups) {
        lookups.push_back({{"tMs", l.t_ms}, {"hit", l.hit}, {"hitMs", l.lookup_ms}, {"penaltyMs", opt(l.penalty_ms)}});
    }
    json out = {{"views", std::move(views)}, {"lookups", std::move(lookups)}, {"partial", t.partial}};
    if (!t.error.empty()) out["error"] = t.error;
    return out;
}

json summary_to_json(const MetricsSummary& s) {
    return {{"hitCount", s.hits},
            {"missCount", s.misses},
            {"missRate", s.miss_rate},
            {"resolvedMisses", s.resolved_misses},
            {"p50", opt(s.p50)},
            {"p95", opt(s.p95)},
            {"p99", opt(s.p99)},
            {"minPenaltyMs", opt(s.min_penalty_ms)},
            {"maxHitMs", s.max_hit_ms},
            {"hitsWithin1Ms", s.hits_within_1ms}};
}

std::vector<TrialTrace> trials_from_json(const json& per_trial) {
    std::vector<TrialTrace> out;
    for (const auto& t : per_trial) {
        TrialTrace trace;
        for (const auto& v : t.at("views")) trace.views.push_back(service::range_from_json(v));
        for (const auto& l : t.at("lookups")) {
            LookupSample s;
            s.t_ms = l.at("tMs").get<double>();
            s.hit = l.at("hit").get<bool>();
            s.lookup_ms = l.at("hitMs").get<double>();
            if (!l.at("penaltyMs").is_null()) s.penalty_ms = l.at("penaltyMs").get<double>();
            trace.lookups.push_back(s);
        }
        trace.partial = t.value("partial", false);
        trace.error = t.value("error", "");
        out.push_back(std::move(trace));
    }
    return out;
}

}  // namespace strata::harness
