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

#include "strata/service/json_codec.hpp"

#include "strata/core/error.hpp"

#include <charconv>
#include <cstdlib>

namespace strata::service {

namespace {

const json& require(const json& j, const char* field) {
    if (!j.is_object()) throw Error(Errc::BadRequest, "expected a JSON object");
    auto it = j.find(field);
    if (it == j.end()) throw Error(Errc::BadRequest, std::string("missing field '") + field + "'");
    return *it;
}

template <typename Int>
Int parse_integer(const json& v, const char* field) {
    if (v.is_number_integer() || v.is_number_unsigned()) {
        return v.get<Int>();
    }
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        Int out{};
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec == std::errc{} && ptr == s.data() + s.size() && !s.empty()) return out;
    }
    throw Error(Errc::BadRequest, std::string("field '") + field + "' must be an integer or decimal string");
}

}  // namespace

json time_to_json(Timestamp t) { return std::to_string(t); }

Timestamp time_from_json(const json& j, const char* field) { return parse_integer<Timestamp>(require(j, field), field); }

VersionId version_from_json(const json& j, const char* field, VersionId fallback) {
    if (!j.is_object() || !j.contains(field) || j.at(field).is_null()) return fallback;
    return parse_integer<VersionId>(j.at(field), field);
}

StreamId stream_from_json(const json& j, const char* field) {
    const auto& v = require(j, field);
    if (v.is_string()) {
        if (auto id = StreamId::parse(v.get_ref<const std::string&>())) return *id;
    }
    throw Error(Errc::BadRequest, std::string("field '") + field + "' must be a UUID string");
}

int int_from_json(const json& j, const char* field) { return parse_integer<int>(require(j, field), field); }

double value_from_json(const json& j, const char* field) {
    const auto& v = require(j, field);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        char* end = nullptr;
        double d = std::strtod(s.c_str(), &end);
        if (!s.empty() && end == s.c_str() + s.size()) return d;
    }
    throw Error(Errc::BadRequest, std::string("field '") + field + "' must be a number");
}

json point_to_json(const RawPoint& p) { return {{"time", time_to_json(p.time)}, {"value", p.value}}; }

RawPoint point_from_json(const json& j) { return {time_from_json(j, "time"), value_from_json(j, "value")}; }

json summary_to_json(const StatSummary& s) {
    return {{"start", time_to_json(s.start)}, {"min", s.min}, {"mean", s.mean}, {"max", s.max}, {"count", s.count}};
}

StatSummary summary_from_json(const json& j) {
    StatSummary s;
    s.start = time_from_json(j, "start");
    s.min = value_from_json(j, "min");
    s.mean = value_from_json(j, "mean");
    s.max = value_from_json(j, "max");
    s.count = parse_integer<std::uint64_t>(require(j, "count"), "count");
    return s;
}

json range_to_json(const TimeRange& r) { return {{"start", time_to_json(r.start)}, {"end", time_to_json(r.end)}}; }

TimeRange range_from_json(const json& j) { return {time_from_json(j, "start"), time_from_json(j, "end")}; }

std::string direction_name(Direction d) { return d == Direction::Forward ? "forward" : "backward"; }

Direction direction_from_json(const json& j, const char* field) {
    const auto& v = require(j, field);
    if (v == "forward") return Direction::Forward;
    if (v == "backward") return Direction::Backward;
    throw Error(Errc::BadRequest, "direction must be \"forward\" or \"backward\"");
}

}  // namespace strata::service
