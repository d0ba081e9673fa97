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

#include <json.hpp>

#include <vector>

namespace strata::service {

using json = nlohmann::json;

// Wire encoding shared by the service and the HTTP client. Timestamps travel
// as decimal strings so 64-bit nanoseconds survive JSON number handling.

json time_to_json(Timestamp t);
/// Accepts a decimal string or an integral JSON number.
Timestamp time_from_json(const json& j, const char* field);
VersionId version_from_json(const json& j, const char* field, VersionId fallback);
StreamId stream_from_json(const json& j, const char* field);
int int_from_json(const json& j, const char* field);
/// Accepts numbers and numeric strings such as "NaN".
double value_from_json(const json& j, const char* field);

json point_to_json(const RawPoint& p);
RawPoint point_from_json(const json& j);
json summary_to_json(const StatSummary& s);
StatSummary summary_from_json(const json& j);
json range_to_json(const TimeRange& r);
TimeRange range_from_json(const json& j);

std::string direction_name(Direction d);
Direction direction_from_json(const json& j, const char* field);

}  // namespace strata::service
