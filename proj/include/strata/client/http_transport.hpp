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
#include <string>

namespace strata::client {

struct HttpTransportOptions {
    std::size_t workers = 4;
    bool accept_gzip = true;
    double timeout_s = 60.0;
};

/// Transport speaking the service's HTTP + JSON protocol. Each worker keeps
/// one persistent connection.
class HttpTransport final : public Transport {
public:
    HttpTransport(std::string host, int port, HttpTransportOptions options = {});
    ~HttpTransport() override;

    void aligned_windows(WindowsQuery q, Callback<WindowsReply> done) override;
    void raw_values(RawQuery q, Callback<RawReply> done) override;
    void nearest(NearestQuery q, Callback<NearestReply> done) override;
    void changes(ChangesQuery q, Callback<ChangesReply> done) override;
    void insert(InsertRequest req, Callback<VersionId> done) override;
    void list_streams(Callback<std::vector<StreamListing>> done) override;

    /// Issues a raw request and returns {status, decoded body}.
    std::pair<int, std::string> request(const std::string& method, const std::string& path, const std::string& body);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace strata::client
