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

#include "strata/store/block_store.hpp"

#include "strata/core/error.hpp"

#include <zlib.h>

#include <cerrno>
#include <cstring>
#include <fcntl.h>
#include <fstream>
#include <sys/stat.h>
#include <unistd.h>

namespace strata::store {

namespace {

constexpr char kLogMagic[8] = {'S', 'T', 'R', 'A', 'T', 'L', 'O', 'G'};
constexpr std::size_t kRecordHeader = 8;

void put_u32(std::byte* out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out[i] = static_cast<std::byte>(v >> (8 * i));
}

std::uint32_t get_u32(const std::byte* in) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(std::to_integer<std::uint8_t>(in[i])) << (8 * i);
    return v;
}

[[noreturn]] void io_failure(const std::string& what) {
    throw Error(Errc::StoreCorrupt, what + ": " + std::strerror(errno));
}

void write_all(int fd, const std::byte* data, std::size_t len, off_t offset) {
    while (len > 0) {
        ssize_t n = ::pwrite(fd, data, len, offset);
        if (n < 0) {
            if (errno == EINTR) continue;
            io_failure("pwrite");
        }
        data += n;
        len -= static_cast<std::size_t>(n);
        offset += n;
    }
}

void read_all(int fd, std::byte* data, std::size_t len, off_t offset) {
    while (len > 0) {
        ssize_t n = ::pread(fd, data, len, offset);
        if (n < 0) {
            if (errno == EINTR) continue;
            io_failure("pread");
        }
        if (n == 0) throw Error(Errc::StoreCorrupt, "block extends past end of log");
        data += n;
        len -= static_cast<std::size_t>(n);
        offset += n;
    }
}

}  // namespace

std::uint32_t crc32(std::span<const std::byte> data) noexcept {
    return static_cast<std::uint32_t>(
        ::crc32(0L, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size())));
}

// ---- MemoryBlockStore -------------------------------------------------------

BlockRef MemoryBlockStore::append(std::span<const std::byte> block) {
    std::lock_guard lock(mu_);
    blocks_.emplace_back(block.begin(), block.end());
    bytes_ += block.size();
    return blocks_.size();
}

Bytes MemoryBlockStore::read(BlockRef ref) const {
    std::lock_guard lock(mu_);
    if (ref == kNullBlock || ref > blocks_.size()) {
        throw Error(Errc::StoreCorrupt, "unknown block " + std::to_string(ref));
    }
    return blocks_[ref - 1];
}

std::optional<Bytes> MemoryBlockStore::load_superblock() const {
    std::lock_guard lock(mu_);
    return superblock_;
}

void MemoryBlockStore::store_superblock(std::span<const std::byte> bytes) {
    std::lock_guard lock(mu_);
    superblock_ = Bytes(bytes.begin(), bytes.end());
}

std::uint64_t MemoryBlockStore::bytes_written() const {
    std::lock_guard lock(mu_);
    return bytes_;
}

// ---- FileBlockStore ---------------------------------------------------------

FileBlockStore::FileBlockStore(const std::filesystem::path& dir) : dir_(dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw Error(Errc::StoreCorrupt, "cannot create store directory " + dir_.string());

    auto log = dir_ / "nodes.log";
    fd_ = ::open(log.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) io_failure("open " + log.string());

    struct stat st {};
    if (::fstat(fd_, &st) != 0) io_failure("fstat");
    if (st.st_size == 0) {
        write_all(fd_, reinterpret_cast<const std::byte*>(kLogMagic), sizeof kLogMagic, 0);
        end_ = sizeof kLogMagic;
    } else {
        char magic[sizeof kLogMagic];
        if (st.st_size < static_cast<off_t>(sizeof magic)) {
            ::close(fd_);
            throw Error(Errc::StoreCorrupt, "node log truncated");
        }
        read_all(fd_, reinterpret_cast<std::byte*>(magic), sizeof magic, 0);
        if (std::memcmp(magic, kLogMagic, sizeof magic) != 0) {
            ::close(fd_);
            throw Error(Errc::StoreCorrupt, "bad node log magic");
        }
        // Anything past the last committed superblock is unreferenced and harmless.
        end_ = static_cast<std::uint64_t>(st.st_size);
    }
}

FileBlockStore::~FileBlockStore() {
    if (fd_ >= 0) ::close(fd_);
}

BlockRef FileBlockStore::append(std::span<const std::byte> block) {
    Bytes record(kRecordHeader + block.size());
    put_u32(record.data(), static_cast<std::uint32_t>(block.size()));
    put_u32(record.data() + 4, crc32(block));
    std::memcpy(record.data() + kRecordHeader, block.data(), block.size());

    std::lock_guard lock(append_mu_);
    const std::uint64_t offset = end_.load();
    write_all(fd_, record.data(), record.size(), static_cast<off_t>(offset));
    end_ = offset + record.size();
    return offset;
}

Bytes FileBlockStore::read(BlockRef ref) const {
    if (ref < sizeof kLogMagic || ref + kRecordHeader > end_.load()) {
        throw Error(Errc::StoreCorrupt, "block reference out of range: " + std::to_string(ref));
    }
    std::byte header[kRecordHeader];
    read_all(fd_, header, sizeof header, static_cast<off_t>(ref));
    const auto len = get_u32(header);
    const auto crc = get_u32(header + 4);
    Bytes data(len);
    read_all(fd_, data.data(), len, static_cast<off_t>(ref + kRecordHeader));
    if (crc32(data) != crc) {
        throw Error(Errc::StoreCorrupt, "checksum mismatch at block " + std::to_string(ref));
    }
    return data;
}

void FileBlockStore::sync() {
    if (::fdatasync(fd_) != 0) io_failure("fdatasync");
}

std::optional<Bytes> FileBlockStore::load_superblock() const {
    auto path = dir_ / "superblock";
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Bytes out(raw.size());
    std::memcpy(out.data(), raw.data(), raw.size());
    return out;
}

void FileBlockStore::store_superblock(std::span<const std::byte> bytes) {
    auto path = dir_ / "superblock";
    auto tmp = dir_ / "superblock.tmp";
    int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
    if (fd < 0) io_failure("open " + tmp.string());
    try {
        write_all(fd, bytes.data(), bytes.size(), 0);
        if (::fsync(fd) != 0) io_failure("fsync superblock");
    } catch (...) {
        ::close(fd);
        throw;
    }
    ::close(fd);
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error(Errc::StoreCorrupt, "rename superblock: " + ec.message());
}

std::uint64_t FileBlockStore::bytes_written() const { return end_.load(); }

}  // namespace strata::store
