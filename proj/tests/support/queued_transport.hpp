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

#include "strata/client/transport.hpp"
#include "strata/client/view_controller.hpp"
#include "strata/store/database.hpp"

#include <deque>
#include <random>

namespace testing {

using namespace strata;
using namespace strata::client;

/// Holds aligned_windows and changes calls until the test releases them.
/// Released calls are answered from a Database at release time.
class QueuedTransport final : public Transport {
public:
    explicit QueuedTransport(store::Database& db) : local_(db) {}

    void aligned_windows(WindowsQuery q, Callback<WindowsReply> done) override {
        windows_log.push_back(q);
        queue_.push_back([this, q, done = std::move(done)](bool fail) {
            if (fail) {
                done(Error(Errc::Transport, "injected failure"));
            } else {
                local_.aligned_windows(q, done);
            }
        });
    }
    void raw_values(RawQuery q, Callback<RawReply> done) override { local_.raw_values(q, std::move(done)); }
    void nearest(NearestQuery q, Callback<NearestReply> done) override { local_.nearest(q, std::move(done)); }
    void changes(ChangesQuery q, Callback<ChangesReply> done) override {
        changes_log.push_back(q);
        queue_.push_back([this, q, done = std::move(done)](bool fail) {
            if (fail) {
                done(Error(Errc::Transport, "injected failure"));
            } else {
                local_.changes(q, done);
            }
        });
    }
    void insert(InsertRequest req, Callback<VersionId> done) override { local_.insert(std::move(req), std::move(done)); }
    void list_streams(Callback<std::vector<StreamListing>> done) override { local_.list_streams(std::move(done)); }

    std::size_t queued() const { return queue_.size(); }

    void deliver(std::size_t i, bool fail = false) {
        auto fn = std::move(queue_.at(i));
        queue_.erase(queue_.begin() + static_cast<std::ptrdiff_t>(i));
        fn(fail);
    }
    void deliver_all() {
        while (!queue_.empty()) deliver(0);
    }
    void deliver_random(std::mt19937_64& rng, std::size_t max_count) {
        for (std::size_t k = 0; k < max_count && !queue_.empty(); ++k) deliver(rng() % queue_.size());
    }

    std::vector<WindowsQuery> windows_log;
    std::vector<ChangesQuery> changes_log;

private:
    LocalTransport local_;
    std::deque<std::function<void(bool)>> queue_;
};

/// Manually advanced clock.
struct FakeClock {
    double now = 0.0;
    Clock fn() {
        return [this] { return now; };
    }
};

}  // namespace testing
