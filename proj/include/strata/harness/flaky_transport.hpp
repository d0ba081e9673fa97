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

#include <memory>

namespace strata::harness {

struct FlakyNetConfig {
    bool enabled = true;
    double delay_mean_ms = 200.0;
    double delay_jitter_ms = 20.0;
    double drop_rate = 0.02;
    /// The caller resends a request when no response has arrived by then.
    double timeout_ms = 1000.0;
    std::uint64_t seed = 1;
};

/// Runs callbacks at steady-clock deadlines on one background thread.
class Scheduler {
public:
    Scheduler();
    ~Scheduler();

    Scheduler(const Scheduler&) = delete;
    Scheduler& operator=(const Scheduler&) = delete;

    void at(double deadline_ms, std::function<void()> fn);
    void after(double delay_ms, std::function<void()> fn);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Message-level network impairment around another transport: the request
/// and the response each wait max(0, N(mean, jitter)) ms and are each lost
/// with probability drop_rate. Lost exchanges are resent after timeout_ms;
/// the first response to arrive wins.
class FlakyTransport final : public client::Transport {
public:
    FlakyTransport(client::Transport& inner, FlakyNetConfig config);
    ~FlakyTransport() override;

    void aligned_windows(client::WindowsQuery q, client::Callback<client::WindowsReply> done) override;
    void raw_values(client::RawQuery q, client::Callback<client::RawReply> done) override;
    void nearest(client::NearestQuery q, client::Callback<client::NearestReply> done) override;
    void changes(client::ChangesQuery q, client::Callback<client::ChangesReply> done) override;
    void insert(client::InsertRequest req, client::Callback<VersionId> done) override;
    void list_streams(client::Callback<std::vector<client::StreamListing>> done) override;

    std::uint64_t messages_dropped() const;
    std::uint64_t resends() const;

    struct Core;

private:
    std::shared_ptr<Core> core_;
};

}  // namespace strata::harness
