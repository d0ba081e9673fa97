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

#include "strata/store/database.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace strata::store {

namespace {

constexpr char kSuperMagic[8] = {'S', 'T', 'R', 'A', 'T', 'A', 'S', 'B'};
constexpr std::uint32_t kSuperFormat = 1;

void put(Bytes& out, std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) out.push_back(static_cast<std::byte>(v >> (8 * i)));
}

std::uint64_t get(std::span<const std::byte> in, std::size_t& pos, int width) {
    if (pos + static_cast<std::size_t>(width) > in.size()) throw Error(Errc::StoreCorrupt, "superblock truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= std::uint64_t(std::to_integer<std::uint8_t>(in[pos + i])) << (8 * i);
    pos += static_cast<std::size_t>(width);
    return v;
}

void check_resolution(int resolution) {
    if (resolution < 0 || resolution > kMaxResolution) {
        throw Error(Errc::ResolutionOutOfRange, "resolution must be in [0, 61], got " + std::to_string(resolution));
    }
}

}  // namespace

Database::Database(std::unique_ptr<BlockStore> store, DatabaseOptions options)
    : options_(options), store_(std::move(store)), cache_(options.node_cache_bytes), source_(*store_, &cache_) {
    if (options_.leaf_threshold == 0) options_.leaf_threshold = 1;
    load();
}

std::unique_ptr<Database> Database::open_memory(DatabaseOptions options) {
    return std::make_unique<Database>(std::make_unique<MemoryBlockStore>(), options);
}

std::unique_ptr<Database> Database::open_directory(const std::filesystem::path& dir, DatabaseOptions options) {
    return std::make_unique<Database>(std::make_unique<FileBlockStore>(dir), options);
}

Database::Stream& Database::find(const StreamId& id) const {
    std::shared_lock lock(streams_mu_);
    auto it = streams_.find(id);
    if (it == streams_.end()) throw Error(Errc::NoSuchStream, "no such stream " + id.to_string());
    return *it->second;
}

bool Database::has_stream(const StreamId& id) const {
    std::shared_lock lock(streams_mu_);
    return streams_.count(id) != 0;
}

std::pair<VersionId, BlockRef> Database::snapshot(const Stream& s, VersionId version) const {
    std::shared_lock lock(s.mu);
    const VersionId latest = s.versions.size();
    if (version == kLatestVersion) version = latest;
    if (version < 1 || version > latest) {
        throw Error(Errc::NoSuchVersion, "stream " + s.id.to_string() + " has no version " + std::to_string(version));
    }
    return {version, s.versions[version - 1].root};
}

VersionId Database::create_stream(const StreamId& id) {
    auto stream = std::make_unique<Stream>();
    stream->id = id;
    auto root = tree::write_empty_root(source_, 1);
    stream->versions.push_back({root.ref, 0});
    {
        std::unique_lock lock(streams_mu_);
        if (streams_.count(id) != 0) throw Error(Errc::DuplicateStream, "stream exists: " + id.to_string());
        streams_.emplace(id, std::move(stream));
    }
    persist();
    return 1;
}

VersionId Database::insert_batch(const StreamId& id, std::span<const RawPoint> points) {
    auto& s = find(id);
    for (const auto& p : points) {
        if (!in_time_domain(p.time)) {
            throw Error(Errc::PointOutOfDomain, "timestamp outside [0, 2^62): " + std::to_string(p.time));
        }
        if (!std::isfinite(p.value)) {
            throw Error(Errc::NonFiniteValue, "non-finite value at " + std::to_string(p.time));
        }
    }
    std::lock_guard writer(s.writer);
    VersionId latest;
    VersionRoot current;
    {
        std::shared_lock lock(s.mu);
        latest = s.versions.size();
        current = s.versions.back();
    }
    if (points.empty()) return latest;

    std::vector<RawPoint> sorted(points.begin(), points.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const RawPoint& a, const RawPoint& b) { return a.time < b.time; });

    const VersionId next = latest + 1;
    auto root = tree::insert(source_, current.root, sorted, next, options_.leaf_threshold);
    store_->sync();
    {
        std::unique_lock lock(s.mu);
        s.versions.push_back({root.ref, root.agg.count});
    }
    persist();
    return next;
}

Versioned<std::vector<RawPoint>> Database::raw_values(const StreamId& id, Timestamp start, Timestamp end,
                                                      VersionId version) const {
    if (start > end) throw Error(Errc::InvalidRange, "start > end");
    auto [v, root] = snapshot(find(id), version);
    Versioned<std::vector<RawPoint>> out{v, {}};
    tree::raw_values(source_, root, {start, end}, out.value);
    return out;
}

Versioned<std::vector<StatSummary>> Database::aligned_windows(const StreamId& id, Timestamp start, Timestamp end,
                                                              int resolution, VersionId version) const {
    check_resolution(resolution);
    if (start > end) throw Error(Errc::InvalidRange, "start > end");
    if (start < kTimeBegin || end > kTimeEnd) throw Error(Errc::InvalidRange, "range outside [0, 2^62]");
    if (!is_aligned(start, resolution) || !is_aligned(end, resolution)) {
        throw Error(Errc::UnalignedBounds, "start and end must be multiples of 2^" + std::to_string(resolution));
    }
    auto [v, root] = snapshot(find(id), version);
    return {v, tree::aligned_windows(source_, root, {start, end}, resolution)};
}

Versioned<RawPoint> Database::nearest(const StreamId& id, Timestamp t, Direction dir, VersionId version) const {
    auto [v, root] = snapshot(find(id), version);
    auto hit = tree::nearest(source_, root, t, dir);
    if (!hit) throw Error(Errc::NoPointFound, "no point in that direction");
    return {v, *hit};
}

Versioned<std::vector<TimeRange>> Database::changes(const StreamId& id, VersionId from_version, VersionId to_version,
                                                    int resolution) const {
    check_resolution(resolution);
    const auto& s = find(id);
    auto [to, to_root] = snapshot(s, to_version);
    auto [from, from_root] = snapshot(s, from_version);
    if (from > to) throw Error(Errc::VersionOrder, "fromVersion is newer than toVersion");
    if (from == to) return {to, {}};
    return {to, tree::changes(source_, to_root, from_root, from, resolution)};
}

VersionId Database::latest_version(const StreamId& id) const {
    const auto& s = find(id);
    std::shared_lock lock(s.mu);
    return s.versions.size();
}

std::vector<StreamInfo> Database::list_streams() const {
    std::shared_lock lock(streams_mu_);
    std::vector<StreamInfo> out;
    out.reserve(streams_.size());
    for (const auto& [id, s] : streams_) {
        std::shared_lock slock(s->mu);
        out.push_back({id, s->versions.size(), s->versions.back().count});
    }
    return out;
}

AuditReport Database::audit(const StreamId& id, VersionId version) const {
    auto [v, root] = snapshot(find(id), version);
    return tree::audit(source_, root, options_.leaf_threshold);
}

// Superblock: magic | u32 format | u32 streams | per stream: 16-byte id,
// u64 versions, versions x (u64 root, u64 count) | u32 crc32.
void Database::persist() {
    std::lock_guard plock(persist_mu_);
    Bytes out;
    for (char c : kSuperMagic) out.push_back(static_cast<std::byte>(c));
    put(out, kSuperFormat, 4);
    {
        std::shared_lock lock(streams_mu_);
        put(out, streams_.size(), 4);
        for (const auto& [id, s] : streams_) {
            for (auto b : id.bytes) out.push_back(static_cast<std::byte>(b));
            std::shared_lock slock(s->mu);
            put(out, s->versions.size(), 8);
            for (const auto& v : s->versions) {
                put(out, v.root, 8);
                put(out, v.count, 8);
            }
        }
    }
    put(out, crc32(out), 4);
    store_->store_superblock(out);
}

void Database::load() {
    auto raw = store_->load_superblock();
    if (!raw) return;
    std::span<const std::byte> in(*raw);
    if (in.size() < sizeof kSuperMagic + 12 || std::memcmp(in.data(), kSuperMagic, sizeof kSuperMagic) != 0) {
        throw Error(Errc::StoreCorrupt, "bad superblock magic");
    }
    const auto body = in.first(in.size() - 4);
    std::size_t crc_pos = in.size() - 4;
    if (get(in, crc_pos, 4) != crc32(body)) throw Error(Errc::StoreCorrupt, "superblock checksum mismatch");

    std::size_t pos = sizeof kSuperMagic;
    if (get(body, pos, 4) != kSuperFormat) throw Error(Errc::StoreCorrupt, "unknown superblock format");
    const auto nstreams = get(body, pos, 4);
    for (std::uint64_t i = 0; i < nstreams; ++i) {
        auto stream = std::make_unique<Stream>();
        for (auto& b : stream->id.bytes) b = static_cast<std::uint8_t>(get(body, pos, 1));
        const auto nversions = get(body, pos, 8);
        if (nversions == 0) throw Error(Errc::StoreCorrupt, "stream without versions");
        stream->versions.reserve(nversions);
        for (std::uint64_t v = 0; v < nversions; ++v) {
            VersionRoot vr;
            vr.root = get(body, pos, 8);
            vr.count = get(body, pos, 8);
            stream->versions.push_back(vr);
        }
        auto id = stream->id;
        streams_.emplace(id, std::move(stream));
    }
    if (pos != body.size()) throw Error(Errc::StoreCorrupt, "trailing superblock bytes");
}

}  // namespace strata::store
