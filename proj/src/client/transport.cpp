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

#include "strata/client/transport.hpp"

#include "strata/store/database.hpp"

namespace strata::client {

WorkerPool::WorkerPool(std::size_t threads) {
    for (std::size_t i = 0; i < threads; ++i) {
        threads_.emplace_back([this, i] {
            for (;;) {
                std::function<void(std::size_t)> task;
                {
                    std::unique_lock lock(mu_);
                    cv_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
                    if (queue_.empty()) return;
                    task = std::move(queue_.front());
                    queue_.pop_front();
                }
                task(i);
            }
        });
    }
}

WorkerPool::~WorkerPool() {
    {
        std::lock_guard lock(mu_);
        stopping_ = true;
    }
    cv_.notify_all();
    for (auto& t : threads_) t.join();
}

void WorkerPool::submit(std::function<void(std::size_t)> task) {
    {
        std::lock_guard lock(mu_);
        queue_.push_back(std::move(task));
    }
    cv_.notify_one();
}

LocalTransport::LocalTransport(store::Database& db, std::size_t workers) : db_(db) {
    if (workers > 0) pool_ = std::make_unique<WorkerPool>(workers);
}

template <typename T, typename Fn>
void LocalTransport::run(Fn fn, Callback<T> done) {
    auto task = [fn = std::move(fn), done = std::move(done)](std::size_t) {
        std::optional<Result<T>> out;
        try {
            out.emplace(fn());
        } catch (const Error& e) {
            out.emplace(e);
        } catch (const std::exception& e) {
            out.emplace(Error(Errc::Transport, e.what()));
        }
        done(std::move(*out));
    };
    if (pool_) {
        pool_->submit(std::move(task));
    } else {
        task(0);
    }
}

void LocalTransport::aligned_windows(WindowsQuery q, Callback<WindowsReply> done) {
    run<WindowsReply>(
        [this, q] {
            auto r = db_.aligned_windows(q.id, q.start, q.end, q.resolution, q.version);
            return WindowsReply{r.version, std::move(r.value)};
        },
        std::move(done));
}

void LocalTransport::raw_values(RawQuery q, Callback<RawReply> done) {
    run<RawReply>(
        [this, q] {
            auto r = db_.raw_values(q.id, q.start, q.end, q.version);
            return RawReply{r.version, std::move(r.value)};
        },
        std::move(done));
}

void LocalTransport::nearest(NearestQuery q, Callback<NearestReply> done) {
    run<NearestReply>(
        [this, q] {
            auto r = db_.nearest(q.id, q.time, q.direction, q.version);
            return NearestReply{r.version, r.value};
        },
        std::move(done));
}

void LocalTransport::changes(ChangesQuery q, Callback<ChangesReply> done) {
    run<ChangesReply>(
        [this, q] {
            auto r = db_.changes(q.id, q.from_version, q.to_version, q.resolution);
            return ChangesReply{r.version, std::move(r.value)};
        },
        std::move(done));
}

void LocalTransport::insert(InsertRequest req, Callback<VersionId> done) {
    run<VersionId>(
        [this, req = std::move(req)] {
            if (req.auto_create && !db_.has_stream(req.id)) {
                try {
                    db_.create_stream(req.id);
                } catch (const Error& e) {
                    if (e.code() != Errc::DuplicateStream) throw;
                }
            }
            return db_.insert_batch(req.id, req.points);
        },
        std::move(done));
}

void LocalTransport::list_streams(Callback<std::vector<StreamListing>> done) {
    run<std::vector<StreamListing>>(
        [this] {
            std::vector<StreamListing> out;
            for (const auto& s : db_.list_streams()) out.push_back({s.id, s.latest, s.point_count});
            return out;
        },
        std::move(done));
}

}  // namespace strata::client
