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

#include "strata/core/error.hpp"
#include "strata/core/types.hpp"

#include <condition_variable>
#include <deque>
#include <functional>
#include <future>
#include <mutex>
#include <thread>
#include <variant>
#include <vector>

namespace strata::store {
class Database;
}

namespace strata::client {

template <typename T>
class Result {
public:
    Result(T value) : v_(std::move(value)) {}
    Result(Error error) : v_(std::move(error)) {}

    bool ok() const noexcept { return v_.index() == 0; }
    const T& value() const& {
        if (!ok()) throw error();
        return std::get<0>(v_);
    }
    T&& value() && {
        if (!ok()) throw error();
        return std::get<0>(std::move(v_));
    }
    const Error& error() const { return std::get<1>(v_); }

private:
    std::variant<T, Error> v_;
};

struct WindowsQuery {
    StreamId id;
    Timestamp start = 0;
    Timestamp end = 0;
    int resolution = 0;
    VersionId version = kLatestVersion;
};

struct RawQuery {
    StreamId id;
    Timestamp start = 0;
    Timestamp end = 0;
    VersionId version = kLatestVersion;
};

struct NearestQuery {
    StreamId id;
    Timestamp time = 0;
    Direction direction = Direction::Forward;
    VersionId version = kLatestVersion;
};

struct ChangesQuery {
    StreamId id;
    VersionId from_version = 1;
    VersionId to_version = kLatestVersion;
    int resolution = 0;
};

struct InsertRequest {
    StreamId id;
    std::vector<RawPoint> points;
    bool auto_create = false;
};

struct WindowsReply {
    VersionId version = 0;
    std::vector<StatSummary> summaries;
};

struct RawReply {
    VersionId version = 0;
    std::vector<RawPoint> points;
};

struct NearestReply {
    VersionId version = 0;
    RawPoint point;
};

struct ChangesReply {
    VersionId version = 0;
    std::vector<TimeRange> ranges;
};

struct StreamListing {
    StreamId id;
    VersionId latest = 0;
    std::uint64_t point_count = 0;
};

template <typename T>
using Callback = std::function<void(Result<T>)>;

/// Asynchronous access to the query service. Callbacks may run on any thread.
class Transport {
public:
    virtual ~Transport() = default;
    virtual void aligned_windows(WindowsQuery q, Callback<WindowsReply> done) = 0;
    virtual void raw_values(RawQuery q, Callback<RawReply> done) = 0;
    virtual void nearest(NearestQuery q, Callback<NearestReply> done) = 0;
    virtual void changes(ChangesQuery q, Callback<ChangesReply> done) = 0;
    virtual void insert(InsertRequest req, Callback<VersionId> done) = 0;
    virtual void list_streams(Callback<std::vector<StreamListing>> done) = 0;
};

/// Fixed set of threads draining a FIFO task queue.
class WorkerPool {
public:
    explicit WorkerPool(std::size_t threads);
    ~WorkerPool();

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    /// The task receives the index of the worker running it.
    void submit(std::function<void(std::size_t)> task);
    std::size_t size() const noexcept { return threads_.size(); }

private:
    std::mutex mu_;
    std::condition_variable cv_;
    std::deque<std::function<void(std::size_t)>> queue_;
    bool stopping_ = false;
    std::vector<std::thread> threads_;
};

/// In-process transport over a Database. With zero worker threads every call
/// completes inline before returning.
class LocalTransport final : public Transport {
public:
    explicit LocalTransport(store::Database& db, std::size_t workers = 0);

    void aligned_windows(WindowsQuery q, Callback<WindowsReply> done) override;
    void raw_values(RawQuery q, Callback<RawReply> done) override;
    void nearest(NearestQuery q, Callback<NearestReply> done) override;
    void changes(ChangesQuery q, Callback<ChangesReply> done) override;
    void insert(InsertRequest req, Callback<VersionId> done) override;
    void list_streams(Callback<std::vector<StreamListing>> done) override;

private:
    template <typename T, typename Fn>
    void run(Fn fn, Callback<T> done);

    store::Database& db_;
    std::unique_ptr<WorkerPool> pool_;
};

/// Blocking wrappers. They throw the transport's Error on failure.
namespace sync {

template <typename T, typename Call>
T await(Call&& call) {
    std::promise<Result<T>> p;
    auto f = p.get_future();
    call([&p](Result<T> r) { p.set_value(std::move(r)); });
    return f.get().value();
}

inline WindowsReply aligned_windows(Transport& t, WindowsQuery q) {
    return await<WindowsReply>([&](Callback<WindowsReply> cb) { t.aligned_windows(std::move(q), std::move(cb)); });
}
inline RawReply raw_values(Transport& t, RawQuery q) {
    return await<RawReply>([&](Callback<RawReply> cb) { t.raw_values(std::move(q), std::move(cb)); });
}
inline NearestReply nearest(Transport& t, NearestQuery q) {
    return await<NearestReply>([&](Callback<NearestReply> cb) { t.nearest(std::move(q), std::move(cb)); });
}
inline ChangesReply changes(Transport& t, ChangesQuery q) {
    return await<ChangesReply>([&](Callback<ChangesReply> cb) { t.changes(std::move(q), std::move(cb)); });
}
inline VersionId insert(Transport& t, InsertRequest req) {
    return await<VersionId>([&](Callback<VersionId> cb) { t.insert(std::move(req), std::move(cb)); });
}
inline std::vector<StreamListing> list_streams(Transport& t) {
    return await<std::vector<StreamListing>>([&](Callback<std::vector<StreamListing>> cb) { t.list_streams(std::move(cb)); });
}

}  // namespace sync

}  // namespace strata::client
