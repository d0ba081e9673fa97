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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace strata::store {

/// Opaque address of a written block. Zero is never a valid reference.
using BlockRef = std::uint64_t;

inline constexpr BlockRef kNullBlock = 0;

using Bytes = std::vector<std::byte>;

/// Append-only storage for serialized tree nodes plus a small superblock that
/// is replaced atomically. Blocks, once appended, are never rewritten.
class BlockStore {
public:
    virtual ~BlockStore() = default;

    /// Thread-safe.
    virtual BlockRef append(std::span<const std::byte> block) = 0;
    /// Thread-safe. Throws Error(StoreCorrupt) for unknown or damaged blocks.
    virtual Bytes read(BlockRef ref) const = 0;
    /// Makes every block appended so far durable.
    virtual void sync() = 0;

    virtual std::optional<Bytes> load_superblock() const = 0;
    virtual void store_superblock(std::span<const std::byte> bytes) = 0;

    virtual std::uint64_t bytes_written() const = 0;
};

class MemoryBlockStore final : public BlockStore {
public:
    BlockRef append(std::span<const std::byte> block) override;
    Bytes read(BlockRef ref) const override;
    void sync() override {}
    std::optional<Bytes> load_superblock() const override;
    void store_superblock(std::span<const std::byte> bytes) override;
    std::uint64_t bytes_written() const override;

private:
    mutable std::mutex mu_;
    std::vector<Bytes> blocks_;
    std::optional<Bytes> superblock_;
    std::uint64_t bytes_ = 0;
};

/// Directory-backed store:
///   nodes.log   - 8-byte magic, then records [u32 length][u32 crc32][payload]
///   superblock  - replaced via write-to-temp + fsync + rename
/// A reference is the byte offset of a record in nodes.log.
class FileBlockStore final : public BlockStore {
public:
    explicit FileBlockStore(const std::filesystem::path& dir);
    ~FileBlockStore() override;

    FileBlockStore(const FileBlockStore&) = delete;
    FileBlockStore& operator=(const FileBlockStore&) = delete;

    BlockRef append(std::span<const std::byte> block) override;
    Bytes read(BlockRef ref) const override;
    void sync() override;
    std::optional<Bytes> load_superblock() const override;
    void store_superblock(std::span<const std::byte> bytes) override;
    std::uint64_t bytes_written() const override;

private:
    std::filesystem::path dir_;
    int fd_ = -1;
    std::mutex append_mu_;
    std::atomic<std::uint64_t> end_{0};
};

std::uint32_t crc32(std::span<const std::byte> data) noexcept;

}  // namespace strata::store
