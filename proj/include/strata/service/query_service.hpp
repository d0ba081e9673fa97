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

#include "strata/service/json_codec.hpp"
#include "strata/store/database.hpp"

#include <string>
#include <string_view>

namespace strata::service {

inline constexpr std::size_t kDefaultMaxBatch = 1'000'000;
inline constexpr std::size_t kGzipThreshold = 1024;
inline constexpr const char* kJsonContentType = "application/json; charset=utf-8";

struct ServiceOptions {
    std::size_t max_batch_points = kDefaultMaxBatch;
};

struct ServiceResponse {
    int status = 200;
    std::string body;
};

/// Stateless JSON front end over a Database. Safe to call from many threads.
class QueryService {
public:
    explicit QueryService(store::Database& db, ServiceOptions options = {});

    ServiceResponse handle(std::string_view method, std::string_view path, std::string_view body) const;

    store::Database& database() noexcept { return db_; }

private:
    json dispatch(std::string_view method, std::string_view path, const json& req) const;
    json raw(const json& req) const;
    json aligned_windows(const json& req) const;
    json nearest(const json& req) const;
    json changes(const json& req) const;
    json insert(const json& req) const;
    json streams() const;

    store::Database& db_;
    ServiceOptions options_;
};

/// HTTP status for an error code.
int http_status(Errc code);

std::string gzip_compress(std::string_view data);
std::string gzip_decompress(std::string_view data);

}  // namespace strata::service
