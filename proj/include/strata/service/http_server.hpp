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

#include "strata/service/query_service.hpp"

#include <memory>
#include <string>
#include <thread>

namespace httplib {
class Server;
}

namespace strata::service {

/// HTTP/1.1 binding for QueryService. Responses of at least kGzipThreshold
/// bytes are gzip-encoded when the request accepts gzip.
class HttpServer {
public:
    explicit HttpServer(QueryService& service);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds and starts serving on a background thread. Port 0 picks a free
    /// port. Throws Error(Transport) if the address cannot be bound.
    int start(const std::string& host, int port);
    /// Blocks the caller while serving on the calling thread.
    void listen_blocking(const std::string& host, int port);
    /// Stops accepting, lets in-flight requests finish, joins the thread.
    void stop();

    int port() const noexcept { return port_; }

private:
    void install_routes();

    QueryService& service_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    int port_ = 0;
};

}  // namespace strata::service
