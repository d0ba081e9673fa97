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

#include "strata/client/policy.hpp"

namespace strata::client {

namespace {

Timestamp clip(__int128 t) {
    if (t < kTimeBegin) return kTimeBegin;
    if (t > kTimeEnd) return kTimeEnd;
    return static_cast<Timestamp>(t);
}

}  // namespace

std::vector<RangeTarget> plan_prefetch(const ViewState& view, int r) {
    const __int128 t0 = view.t0;
    const __int128 t1 = view.t1;
    const __int128 w = t1 - t0;
    std::vector<RangeTarget> out;
    auto add = [&](int res, __int128 s, __int128 e) {
        auto range = align_request_range(clip(s), clip(e), res);
        if (!range.empty()) out.push_back({res, range});
    };
    add(r, t0 - w, t0);
    add(r, t1, t1 + w);
    if (r > 0) add(r - 1, t0, t1);
    if (r < kMaxResolution) add(r + 1, t0 - w, t1 + w);
    return out;
}

}  // namespace strata::client
