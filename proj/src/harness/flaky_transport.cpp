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

#include "strata/harness/flaky_transport.hpp"

#include "strata/client/view_controller.hpp"

#include <atomic>
#include <queue>
#include <random>

namespace strata::harness {

using namespace client;

struct Scheduler::Impl {
    struct Item {
        double deadline;
        std::uint64_t seq;
        std::function<void()> fn;
        bool operator>(const Item& o) const { return deadline != o.deadline ? deadline > o.deadline : seq > o.seq; }
    };

    std::mutex mu;
    std::condition_variable cv;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    std::uint64_t seq = 0;
    bool stopping = false;
    std::thread thread;

    Impl() {
        thread = std::thread([this] { loop(); });
    }

    void loop() {
        std::unique_lock lock(mu);
        while (!stopping) {
            if (queue.empty()) {
                cv.wait(lock);
                continue;
            }
            const double wait = queue.top().deadline - steady_now_ms();
            if (wait > 0) {
                cv.wait_for(lock, std::chrono::duration<double, std::milli>(wait));
                continue;
            }
            auto fn = std::move(const_cast<Item&>(queue.top()).fn);
            queue.pop();
            lock.unlock();
            fn();
            lock.lock();
        }
    }
};

Scheduler::Scheduler() : impl_(std::make_unique<Impl>()) {}

Scheduler::~Scheduler() {
    {
        std::lock_guard lock(impl_->mu);
        impl_->stopping = true;
        while (!impl_->queue.empty()) impl_->queue.pop();
    }
    impl_->cv.notify_all();
    impl_->thread.join();
}

void Scheduler::at(double deadline_ms, std::function<void()> fn) {
    {
        std::lock_guard lock(impl_->mu);
        impl_->queue.push({deadline_ms, impl_->seq++, std::move(fn)});
    }
    impl_->cv.notify_all();
}

void Scheduler::after(double delay_ms, std::function<void()> fn) { at(steady_now_ms() + delay_ms, std::move(fn)); }

struct FlakyTransport::Core : std::enable_shared_from_this<FlakyTransport::Core> {
    Transport& inner;
    FlakyNetConfig config;
    Scheduler scheduler;
    std::mutex rng_mu;
    std::mt19937_64 rng;
    std::atomic<std::uint64_t> dropped{0};
    std::atomic<std::uint64_t> resends{0};

    Core(Transport& t, FlakyNetConfig c) : inner(t), config(c), rng(c.seed) {}

    /// Returns the leg delay, or a negative value when the message is lost.
    double leg() {
        std::lock_guard lock(rng_mu);
        std::normal_distribution<double> delay(config.delay_mean_ms, config.delay_jitter_ms);
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        const double d = std::max(0.0, delay(rng));
        if (coin(rng) < config.drop_rate) {
            ++dropped;
            return -1.0;
        }
        return d;
    }

    template <typename T>
    void call(std::function<void(Callback<T>)> invoke, Callback<T> done) {
        if (!config.enabled) {
            invoke(std::move(done));
            return;
        }
        struct Exchange {
            std::atomic<bool> finished{false};
            Callback<T> done;
            std::function<void(Callback<T>)> invoke;
        };
        auto ex = std::make_shared<Exchange>();
        ex->done = std::move(done);
        ex->invoke = std::move(invoke);
        attempt<T>(ex);
    }

    template <typename T, typename Ex>
    void attempt(std::shared_ptr<Ex> ex) {
        std::weak_ptr<Core> weak = shared_from_this();
        const double out = leg();
        if (out >= 0) {
            scheduler.after(out, [weak, ex] {
                auto self = weak.lock();
                if (!self) return;
                ex->invoke([weak, ex](Result<T> r) {
                    auto core = weak.lock();
                    if (!core) return;
                    const double back = core->leg();
                    if (back < 0) return;
                    core->scheduler.after(back, [ex, r = std::move(r)]() mutable {
                        if (!ex->finished.exchange(true)) ex->done(std::move(r));
                    });
                });
            });
        }
        scheduler.after(config.timeout_ms, [weak, ex] {
            auto self = weak.lock();
            if (!self || ex->finished.load()) return;
            ++self->resends;
            self->template attempt<T>(ex);
        });
    }
};

FlakyTransport::FlakyTransport(Transport& inner, FlakyNetConfig config)
    : core_(std::make_shared<Core>(inner, config)) {}

FlakyTransport::~FlakyTransport() = default;

std::uint64_t FlakyTransport::messages_dropped() const { return core_->dropped.load(); }
std::uint64_t FlakyTransport::resends() const { return core_->resends.load(); }

void FlakyTransport::aligned_windows(WindowsQuery q, Callback<WindowsReply> done) {
    auto& inner = core_->inner;
    core_->call<WindowsReply>([&inner, q](Callback<WindowsReply> cb) { inner.aligned_windows(q, std::move(cb)); },
                              std::move(done));
}

void FlakyTransport::raw_values(RawQuery q, Callback<RawReply> done) {
    auto& inner = core_->inner;
    core_->call<RawReply>([&inner, q](Callback<RawReply> cb) { inner.raw_values(q, std::move(cb)); }, std::move(done));
}

void FlakyTransport::nearest(NearestQuery q, Callback<NearestReply> done) {
    auto& inner = core_->inner;
    core_->call<NearestReply>([&inner, q](Callback<NearestReply> cb) { inner.nearest(q, std::move(cb)); },
                              std::move(done));
}

void FlakyTransport::changes(ChangesQuery q, Callback<ChangesReply> done) {
    auto& inner = core_->inner;
    core_->call<ChangesReply>([&inner, q](Callback<ChangesReply> cb) { inner.changes(q, std::move(cb)); },
                              std::move(done));
}

void FlakyTransport::insert(InsertRequest req, Callback<VersionId> done) {
    auto& inner = core_->inner;
    auto shared = std::make_shared<InsertRequest>(std::move(req));
    core_->call<VersionId>([&inner, shared](Callback<VersionId> cb) { inner.insert(*shared, std::move(cb)); },
                           std::move(done));
}

void FlakyTransport::list_streams(Callback<std::vector<StreamListing>> done) {
    auto& inner = core_->inner;
    core_->call<std::vector<StreamListing>>(
        [&inner](Callback<std::vector<StreamListing>> cb) { inner.list_streams(std::move(cb)); }, std::move(done));
}

}  // namespace strata::harness
