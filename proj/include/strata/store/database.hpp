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
#include "strata/store/tree.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <vector>

namespace strata::store {

struct DatabaseOptions {
    std::size_t leaf_threshold = 1024;
    std::size_t node_cache_bytes = std::size_t{256} << 20;
};

template <typename T>
struct Versioned {
    VersionId version = 0;
    T value;
};

struct StreamInfo {
    StreamId id;
    VersionId latest = 0;
    std::uint64_t point_count = 0;
};

/// Collection of versioned streams over one block store.
///
/// Readers see immutable snapshots and may run concurrently with everything.
/// Writes to one stream are serialized; writes to distinct streams run in
/// parallel. Every committed version is recorded in the superblock.
class Database {
public:
    Database(std::unique_ptr<BlockStore> store, DatabaseOptions options = {});

    static std::unique_ptr<Database> open_memory(DatabaseOptions options = {});
    static std::unique_ptr<Database> open_directory(const std::filesystem::path& dir, DatabaseOptions options = {});

    VersionId create_stream(const StreamId& id);

    /// Points may be unsorted and may repeat timestamps. An empty batch
    /// commits nothing and returns the current latest version.
    VersionId insert_batch(const StreamId& id, std::span<const RawPoint> points);

    Versioned<std::vector<RawPoint>> raw_values(const StreamId& id, Timestamp start, Timestamp end,
                                                VersionId version = kLatestVersion) const;
    Versioned<std::vector<StatSummary>> aligned_windows(const StreamId& id, Timestamp start, Timestamp end,
                                                        int resolution, VersionId version = kLatestVersion) const;
    Versioned<RawPoint> nearest(const StreamId& id, Timestamp t, Direction dir,
                                VersionId version = kLatestVersion) const;
    /// to_version may be kLatestVersion; the result carries the resolved version.
    Versioned<std::vector<TimeRange>> changes(const StreamId& id, VersionId from_version, VersionId to_version,
                                              int resolution) const;

    VersionId latest_version(const StreamId& id) const;
    std::vector<StreamInfo> list_streams() const;
    bool has_stream(const StreamId& id) const;

    AuditReport audit(const StreamId& id, VersionId version = kLatestVersion) const;

    std::uint64_t node_loads() const noexcept { return source_.loads(); }
    NodeCache& node_cache() noexcept { return cache_; }
    const DatabaseOptions& options() const noexcept { return options_; }

private:
    struct VersionRoot {
        BlockRef root = kNullBlock;
        std::uint64_t count = 0;
    };

    struct Stream {
        StreamId id;
        std::mutex writer;
        mutable std::shared_mutex mu;
        std::vector<VersionRoot> versions;  // index = version - 1
    };

    Stream& find(const StreamId& id) const;
    /// Resolves version 0 to latest and validates the rest.
    std::pair<VersionId, BlockRef> snapshot(const Stream& s, VersionId version) const;
    void persist();
    void load();

    DatabaseOptions options_;
    std::unique_ptr<BlockStore> store_;
    NodeCache cache_;
    NodeSource source_;

    mutable std::shared_mutex streams_mu_;
    std::map<StreamId, std::unique_ptr<Stream>> streams_;
    std::mutex persist_mu_;
};

}  // namespace strata::store
