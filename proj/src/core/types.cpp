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

#include "strata/core/error.hpp"
#include "strata/core/types.hpp"

#include <random>

namespace strata {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
    case Errc::DuplicateStream: return "DuplicateStream";
    case Errc::NoSuchStream: return "NoSuchStream";
    case Errc::NoSuchVersion: return "NoSuchVersion";
    case Errc::PointOutOfDomain: return "PointOutOfDomain";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::UnalignedBounds: return "UnalignedBounds";
    case Errc::ResolutionOutOfRange: return "ResolutionOutOfRange";
    case Errc::VersionOrder: return "VersionOrder";
    case Errc::InvalidRange: return "InvalidRange";
    case Errc::NoPointFound: return "NoPointFound";
    case Errc::StoreCorrupt: return "StoreCorrupt";
    case Errc::BadRequest: return "BadRequest";
    case Errc::BatchTooLarge: return "BatchTooLarge";
    case Errc::Transport: return "Transport";
    case Errc::Timeout: return "Timeout";
    case Errc::UnknownRoute: return "UnknownRoute";
    }
    return "Unknown";
}

std::optional<Errc> errc_from_string(std::string_view name) noexcept {
    for (int i = 0; i <= static_cast<int>(Errc::UnknownRoute); ++i) {
        if (to_string(static_cast<Errc>(i)) == name) return static_cast<Errc>(i);
    }
    return std::nullopt;
}

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::optional<StreamId> StreamId::parse(std::string_view text) {
    if (text.size() != 36) {
        return std::nullopt;
    }
    StreamId id;
    std::size_t nibble = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (i == 8 || i == 13 || i == 18 || i == 23) {
            if (text[i] != '-') return std::nullopt;
            continue;
        }
        int d = hex_digit(text[i]);
        if (d < 0) return std::nullopt;
        auto& b = id.bytes[nibble / 2];
        b = static_cast<std::uint8_t>(nibble % 2 == 0 ? d << 4 : b | d);
        ++nibble;
    }
    return id;
}

StreamId StreamId::from_words(std::uint64_t hi, std::uint64_t lo) noexcept {
    StreamId id;
    for (int i = 0; i < 8; ++i) {
        id.bytes[i] = static_cast<std::uint8_t>(hi >> (56 - 8 * i));
        id.bytes[8 + i] = static_cast<std::uint8_t>(lo >> (56 - 8 * i));
    }
    return id;
}

StreamId StreamId::random() {
    std::random_device rd;
    std::uint64_t hi = (std::uint64_t{rd()} << 32) ^ rd();
    std::uint64_t lo = (std::uint64_t{rd()} << 32) ^ rd();
    auto id = from_words(hi, lo);
    id.bytes[6] = static_cast<std::uint8_t>((id.bytes[6] & 0x0f) | 0x40);
    id.bytes[8] = static_cast<std::uint8_t>((id.bytes[8] & 0x3f) | 0x80);
    return id;
}

std::string StreamId::to_string() const {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(36);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        if (i == 4 || i == 6 || i == 8 || i == 10) out.push_back('-');
        out.push_back(kHex[bytes[i] >> 4]);
        out.push_back(kHex[bytes[i] & 0xf]);
    }
    return out;
}

std::size_t StreamIdHash::operator()(const StreamId& id) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto b : id.bytes) {
        h = (h ^ b) * 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

}  // namespace strata
