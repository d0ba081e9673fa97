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

#include "strata/store/node.hpp"

#include "strata/core/error.hpp"

#include <bit>
#include <cstring>

namespace strata::store {

namespace {

class Writer {
public:
    explicit Writer(std::size_t reserve) { out_.reserve(reserve); }

    void u8(std::uint8_t v) { out_.push_back(static_cast<std::byte>(v)); }
    void u16(std::uint16_t v) { put(v, 2); }
    void u32(std::uint32_t v) { put(v, 4); }
    void u64(std::uint64_t v) { put(v, 8); }
    void i64(std::int64_t v) { put(static_cast<std::uint64_t>(v), 8); }
    void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }

    Bytes take() { return std::move(out_); }

private:
    void put(std::uint64_t v, int width) {
        for (int i = 0; i < width; ++i) out_.push_back(static_cast<std::byte>(v >> (8 * i)));
    }

    Bytes out_;
};

class Reader {
public:
    explicit Reader(std::span<const std::byte> in) : in_(in) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
    std::uint64_t u64() { return get(8); }
    std::int64_t i64() { return static_cast<std::int64_t>(get(8)); }
    double f64() { return std::bit_cast<double>(get(8)); }

    bool done() const noexcept { return pos_ == in_.size(); }

private:
    std::uint64_t get(int width) {
        if (pos_ + static_cast<std::size_t>(width) > in_.size()) {
            throw Error(Errc::StoreCorrupt, "truncated node");
        }
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i) {
            v |= std::uint64_t(std::to_integer<std::uint8_t>(in_[pos_ + i])) << (8 * i);
        }
        pos_ += static_cast<std::size_t>(width);
        return v;
    }

    std::span<const std::byte> in_;
    std::size_t pos_ = 0;
};

constexpr std::size_t kHeaderBytes = 24;
constexpr std::size_t kPointBytes = 16;
constexpr std::size_t kSlotBytes = 48;

}  // namespace

Bytes encode_node(const Node& node) {
    const bool leaf = node.is_leaf();
    const std::size_t n = leaf ? node.points.size() : node.children.size();
    Writer w(kHeaderBytes + (leaf ? n * kPointBytes : 8 + n * kSlotBytes));
    w.u8(static_cast<std::uint8_t>(node.kind));
    w.u8(static_cast<std::uint8_t>(node.span_shift));
    w.u16(0);
    w.u32(static_cast<std::uint32_t>(n));
    w.u64(node.version);
    w.i64(node.start);
    if (leaf) {
        for (const auto& p : node.points) {
            w.i64(p.time);
            w.f64(p.value);
        }
    } else {
        std::uint64_t bitmap = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (node.children[i].present()) bitmap |= std::uint64_t{1} << i;
        }
        w.u64(bitmap);
        for (const auto& c : node.children) {
            if (!c.present()) continue;
            w.u64(c.ref);
            w.u64(c.version);
            w.u64(c.agg.count);
            w.f64(c.agg.sum);
            w.f64(c.agg.min);
            w.f64(c.agg.max);
        }
    }
    return w.take();
}

Node decode_node(std::span<const std::byte> bytes) {
    Reader r(bytes);
    Node node;
    const auto kind = r.u8();
    if (kind > 1) throw Error(Errc::StoreCorrupt, "bad node kind");
    node.kind = static_cast<NodeKind>(kind);
    node.span_shift = r.u8();
    if (node.span_shift > kTimeBits) throw Error(Errc::StoreCorrupt, "bad node span");
    r.u16();
    const auto n = r.u32();
    node.version = r.u64();
    node.start = r.i64();
    if (node.is_leaf()) {
        node.points.resize(n);
        for (auto& p : node.points) {
            p.time = r.i64();
            p.value = r.f64();
        }
    } else {
        if (n != Node::fanout_for(node.span_shift)) throw Error(Errc::StoreCorrupt, "bad fanout");
        node.children.resize(n);
        const auto bitmap = r.u64();
        for (std::size_t i = 0; i < n; ++i) {
            if ((bitmap >> i & 1) == 0) continue;
            auto& c = node.children[i];
            c.ref = r.u64();
            c.version = r.u64();
            c.agg.count = r.u64();
            c.agg.sum = r.f64();
            c.agg.min = r.f64();
            c.agg.max = r.f64();
        }
    }
    if (!r.done()) throw Error(Errc::StoreCorrupt, "trailing bytes in node");
    return node;
}

std::size_t node_footprint(const Node& node) noexcept {
    return sizeof(Node) + node.points.capacity() * sizeof(RawPoint) + node.children.capacity() * sizeof(ChildSlot);
}

}  // namespace strata::store
