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

#include "strata/service/http_server.hpp"

#include <httplib.h>

namespace strata::service {

HttpServer::HttpServer(QueryService& service) : service_(service), server_(std::make_unique<httplib::Server>()) {
    install_routes();
}

HttpServer::~HttpServer() { stop(); }

void HttpServer::install_routes() {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
        auto out = service_.handle(req.method, req.path, req.body);
        res.status = out.status;
        const auto accept = req.get_header_value("Accept-Encoding");
        if (out.body.size() >= kGzipThreshold && accept.find("gzip") != std::string::npos) {
            res.set_header("Content-Encoding", "gzip");
            res.set_content(gzip_compress(out.body), kJsonContentType);
        } else {
            res.set_content(std::move(out.body), kJsonContentType);
        }
    };
    server_->Get(R"(/v1/.*)", handler);
    server_->Post(R"(/v1/.*)", handler);
    server_->set_payload_max_length(std::size_t{1} << 30);
    server_->set_tcp_nodelay(true);
}

int HttpServer::start(const std::string& host, int port) {
    if (port == 0) {
        port_ = server_->bind_to_any_port(host);
    } else {
        port_ = server_->bind_to_port(host, port) ? port : -1;
    }
    if (port_ <= 0) throw Error(Errc::Transport, "cannot bind " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    return port_;
}

void HttpServer::listen_blocking(const std::string& host, int port) {
    if (!server_->bind_to_port(host, port)) {
        throw Error(Errc::Transport, "cannot bind " + host + ":" + std::to_string(port));
    }
    port_ = port;
    server_->listen_after_bind();
}

void HttpServer::stop() {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
}

}  // namespace strata::service
