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

#include "strata/client/http_transport.hpp"

#include "strata/service/json_codec.hpp"

#include <httplib.h>

namespace strata::client {

using service::json;

struct HttpTransport::Impl {
    std::string host;
    int port;
    HttpTransportOptions options;
    std::vector<std::unique_ptr<httplib::Client>> clients;
    std::unique_ptr<httplib::Client> direct;
    std::mutex direct_mu;
    WorkerPool pool;

    Impl(std::string h, int p, HttpTransportOptions o)
        : host(std::move(h)), port(p), options(o), pool(std::max<std::size_t>(1, o.workers)) {
        for (std::size_t i = 0; i < pool.size(); ++i) clients.push_back(make_client());
        direct = make_client();
    }

    std::unique_ptr<httplib::Client> make_client() const {
        auto c = std::make_unique<httplib::Client>(host, port);
        c->set_keep_alive(true);
        c->set_tcp_nodelay(true);
        const auto sec = static_cast<time_t>(options.timeout_s);
        const auto usec = static_cast<time_t>((options.timeout_s - static_cast<double>(sec)) * 1e6);
        c->set_read_timeout(sec, usec);
        c->set_write_timeout(sec, usec);
        c->set_connection_timeout(sec, usec);
        return c;
    }

    std::pair<int, std::string> exchange(httplib::Client& c, const std::string& method, const std::string& path,
                                         const std::string& body) const {
        httplib::Headers headers;
        if (options.accept_gzip) headers.emplace("Accept-Encoding", "gzip");
        auto res = method == "GET" ? c.Get(path, headers)
                                   : c.Post(path, headers, body, "application/json");
        if (!res) throw Error(Errc::Transport, "HTTP " + method + " " + path + ": " + httplib::to_string(res.error()));
        return {res->status, res->body};
    }

    json call(std::size_t worker, const std::string& method, const std::string& path, const json& req) const {
        auto [status, body] = exchange(*clients[worker], method, path, method == "GET" ? std::string{} : req.dump());
        auto j = json::parse(body, nullptr, false);
        if (j.is_discarded()) throw Error(Errc::Transport, "malformed response body from " + path);
        if (status != 200) {
            Errc code = Errc::Transport;
            std::string message = "HTTP status " + std::to_string(status);
            if (j.is_object() && j.contains("error")) {
                const auto& e = j.at("error");
                if (auto c = errc_from_string(e.value("code", ""))) code = *c;
                message = e.value("message", message);
            }
            throw Error(code, message);
        }
        return j;
    }

    template <typename T, typename Decode>
    void submit(std::string method, std::string path, json req, Decode decode, Callback<T> done) {
        pool.submit([this, method = std::move(method), path = std::move(path), req = std::move(req),
                     decode = std::move(decode), done = std::move(done)](std::size_t worker) {
            std::optional<Result<T>> out;
            try {
                out.emplace(decode(call(worker, method, path, req)));
            } catch (const Error& e) {
                out.emplace(e);
            } catch (const std::exception& e) {
                out.emplace(Error(Errc::Transport, e.what()));
            }
            done(std::move(*out));
        });
    }
};

HttpTransport::HttpTransport(std::string host, int port, HttpTransportOptions options)
    : impl_(std::make_unique<Impl>(std::move(host), port, options)) {}

HttpTransport::~HttpTransport() = default;

std::pair<int, std::string> HttpTransport::request(const std::string& method, const std::string& path,
                                                   const std::string& body) {
    std::lock_guard lock(impl_->direct_mu);
    return impl_->exchange(*impl_->direct, method, path, body);
}

void HttpTransport::aligned_windows(WindowsQuery q, Callback<WindowsReply> done) {
    json req = {{"uuid", q.id.to_string()},
                {"start", service::time_to_json(q.start)},
                {"end", service::time_to_json(q.end)},
                {"resolution", q.resolution},
                {"version", q.version}};
    impl_->submit<WindowsReply>(
        "POST", "/v1/query/aligned_windows", std::move(req),
        [](const json& j) {
            WindowsReply r;
            r.version = j.at("version").get<VersionId>();
            const auto& s = j.at("summaries");
            r.summaries.reserve(s.size());
            for (const auto& e : s) r.summaries.push_back(service::summary_from_json(e));
            return r;
        },
        std::move(done));
}

void HttpTransport::raw_values(RawQuery q, Callback<RawReply> done) {
    json req = {{"uuid", q.id.to_string()},
                {"start", service::time_to_json(q.start)},
                {"end", service::time_to_json(q.end)},
                {"version", q.version}};
    impl_->submit<RawReply>(
        "POST", "/v1/query/raw", std::move(req),
        [](const json& j) {
            RawReply r;
            r.version = j.at("version").get<VersionId>();
            for (const auto& e : j.at("points")) r.points.push_back(service::point_from_json(e));
            return r;
        },
        std::move(done));
}

void HttpTransport::nearest(NearestQuery q, Callback<NearestReply> done) {
    json req = {{"uuid", q.id.to_string()},
                {"time", service::time_to_json(q.time)},
                {"direction", service::direction_name(q.direction)},
                {"version", q.version}};
    impl_->submit<NearestReply>(
        "POST", "/v1/query/nearest", std::move(req),
        [](const json& j) {
            return NearestReply{j.at("version").get<VersionId>(), service::point_from_json(j.at("point"))};
        },
        std::move(done));
}

void HttpTransport::changes(ChangesQuery q, Callback<ChangesReply> done) {
    json req = {{"uuid", q.id.to_string()},
                {"fromVersion", q.from_version},
                {"toVersion", q.to_version},
                {"resolution", q.resolution}};
    impl_->submit<ChangesReply>(
        "POST", "/v1/query/changes", std::move(req),
        [](const json& j) {
            ChangesReply r;
            r.version = j.at("version").get<VersionId>();
            for (const auto& e : j.at("ranges")) r.ranges.push_back(service::range_from_json(e));
            return r;
        },
        std::move(done));
}

void HttpTransport::insert(InsertRequest req, Callback<VersionId> done) {
    json points = json::array();
    for (const auto& p : req.points) points.push_back(service::point_to_json(p));
    json body = {{"uuid", req.id.to_string()}, {"points", std::move(points)}, {"autoCreate", req.auto_create}};
    impl_->submit<VersionId>(
        "POST", "/v1/insert", std::move(body), [](const json& j) { return j.at("version").get<VersionId>(); },
        std::move(done));
}

void HttpTransport::list_streams(Callback<std::vector<StreamListing>> done) {
    impl_->submit<std::vector<StreamListing>>(
        "GET", "/v1/streams", json{},
        [](const json& j) {
            std::vector<StreamListing> out;
            for (const auto& e : j) {
                out.push_back({service::stream_from_json(e, "uuid"), e.at("latestVersion").get<VersionId>(),
                               e.at("pointCount").get<std::uint64_t>()});
            }
            return out;
        },
        std::move(done));
}

}  // namespace strata::client
