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

#include "strata/service/query_service.hpp"

#include <zlib.h>

namespace strata::service {

int http_status(Errc code) {
    switch (code) {
    case Errc::NoSuchStream:
    case Errc::NoSuchVersion:
    case Errc::NoPointFound:
    case Errc::UnknownRoute: return 404;
    case Errc::DuplicateStream: return 409;
    case Errc::BatchTooLarge: return 413;
    case Errc::StoreCorrupt:
    case Errc::Transport:
    case Errc::Timeout: return 500;
    default: return 400;
    }
}

namespace {

std::string error_body(std::string_view code, const std::string& message) {
    json j = {{"error", {{"code", code}, {"message", message}}}};
    return j.dump();
}

}  // namespace

QueryService::QueryService(store::Database& db, ServiceOptions options) : db_(db), options_(options) {}

ServiceResponse QueryService::handle(std::string_view method, std::string_view path, std::string_view body) const {
    try {
        json req;
        if (method == "POST") {
            req = json::parse(body, nullptr, false);
            if (req.is_discarded()) throw Error(Errc::BadRequest, "body is not valid JSON");
        }
        return {200, dispatch(method, path, req).dump()};
    } catch (const Error& e) {
        return {http_status(e.code()), error_body(to_string(e.code()), e.what())};
    } catch (const json::exception& e) {
        return {400, error_body(to_string(Errc::BadRequest), e.what())};
    } catch (const std::exception& e) {
        return {500, error_body("Internal", e.what())};
    }
}

json QueryService::dispatch(std::string_view method, std::string_view path, const json& req) const {
    if (method == "GET" && path == "/v1/streams") return streams();
    if (method == "POST") {
        if (path == "/v1/query/raw") return raw(req);
        if (path == "/v1/query/aligned_windows") return aligned_windows(req);
        if (path == "/v1/query/nearest") return nearest(req);
        if (path == "/v1/query/changes") return changes(req);
        if (path == "/v1/insert") return insert(req);
    }
    throw Error(Errc::UnknownRoute, std::string(method) + " " + std::string(path));
}

json QueryService::raw(const json& req) const {
    auto r = db_.raw_values(stream_from_json(req, "uuid"), time_from_json(req, "start"), time_from_json(req, "end"),
                            version_from_json(req, "version", kLatestVersion));
    json points = json::array();
    for (const auto& p : r.value) points.push_back(point_to_json(p));
    return {{"version", r.version}, {"points", std::move(points)}};
}

json QueryService::aligned_windows(const json& req) const {
    auto r = db_.aligned_windows(stream_from_json(req, "uuid"), time_from_json(req, "start"),
                                 time_from_json(req, "end"), int_from_json(req, "resolution"),
                                 version_from_json(req, "version", kLatestVersion));
    json out = json::array();
    for (const auto& s : r.value) out.push_back(summary_to_json(s));
    return {{"version", r.version}, {"summaries", std::move(out)}};
}

json QueryService::nearest(const json& req) const {
    auto r = db_.nearest(stream_from_json(req, "uuid"), time_from_json(req, "time"),
                         direction_from_json(req, "direction"), version_from_json(req, "version", kLatestVersion));
    return {{"version", r.version}, {"point", point_to_json(r.value)}};
}

json QueryService::changes(const json& req) const {
    if (!req.contains("fromVersion")) throw Error(Errc::BadRequest, "missing field 'fromVersion'");
    const VersionId from = version_from_json(req, "fromVersion", kLatestVersion);
    if (from == kLatestVersion) throw Error(Errc::BadRequest, "fromVersion must be a concrete version");
    auto r = db_.changes(stream_from_json(req, "uuid"), from, version_from_json(req, "toVersion", kLatestVersion),
                         int_from_json(req, "resolution"));
    json ranges = json::array();
    for (const auto& tr : r.value) ranges.push_back(range_to_json(tr));
    return {{"version", r.version}, {"ranges", std::move(ranges)}};
}

json QueryService::insert(const json& req) const {
    const auto id = stream_from_json(req, "uuid");
    const auto it = req.find("points");
    if (it == req.end() || !it->is_array()) throw Error(Errc::BadRequest, "points must be an array");
    if (it->size() > options_.max_batch_points) {
        throw Error(Errc::BatchTooLarge, "batch of " + std::to_string(it->size()) + " points exceeds limit of " +
                                             std::to_string(options_.max_batch_points));
    }
    std::vector<RawPoint> points;
    points.reserve(it->size());
    for (const auto& p : *it) points.push_back(point_from_json(p));

    const bool auto_create = req.value("autoCreate", false);
    if (auto_create && !db_.has_stream(id)) {
        try {
            db_.create_stream(id);
        } catch (const Error& e) {
            if (e.code() != Errc::DuplicateStream) throw;
        }
    }
    return {{"version", db_.insert_batch(id, points)}};
}

json QueryService::streams() const {
    json out = json::array();
    for (const auto& s : db_.list_streams()) {
        out.push_back({{"uuid", s.id.to_string()}, {"latestVersion", s.latest}, {"pointCount", s.point_count}});
    }
    return out;
}

std::string gzip_compress(std::string_view data) {
    z_stream zs{};
    if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
        throw Error(Errc::Transport, "deflateInit2 failed");
    }
    std::string out(deflateBound(&zs, static_cast<uLong>(data.size())), '\0');
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = deflate(&zs, Z_FINISH);
    out.resize(zs.total_out);
    deflateEnd(&zs);
    if (rc != Z_STREAM_END) throw Error(Errc::Transport, "gzip compression failed");
    return out;
}

std::string gzip_decompress(std::string_view data) {
    z_stream zs{};
    if (inflateInit2(&zs, 15 + 16) != Z_OK) throw Error(Errc::Transport, "inflateInit2 failed");
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    std::string out;
    char buf[1 << 15];
    int rc = Z_OK;
    while (rc == Z_OK) {
        zs.next_out = reinterpret_cast<Bytef*>(buf);
        zs.avail_out = sizeof buf;
        rc = inflate(&zs, Z_NO_FLUSH);
        out.append(buf, sizeof buf - zs.avail_out);
    }
    inflateEnd(&zs);
    if (rc != Z_STREAM_END) throw Error(Errc::Transport, "gzip stream is corrupt");
    return out;
}

}  // namespace strata::service
