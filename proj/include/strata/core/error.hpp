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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace strata {

enum class Errc {
    DuplicateStream,
    NoSuchStream,
    NoSuchVersion,
    PointOutOfDomain,
    NonFiniteValue,
    UnalignedBounds,
    ResolutionOutOfRange,
    VersionOrder,
    InvalidRange,
    NoPointFound,
    StoreCorrupt,
    BadRequest,
    BatchTooLarge,
    Transport,
    Timeout,
    UnknownRoute,
};

std::string_view to_string(Errc code) noexcept;
std::optional<Errc> errc_from_string(std::string_view name) noexcept;

/// Error raised by the store and service layers; the code is machine-readable.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message) : std::runtime_error(message), code_(code) {}
    explicit Error(Errc code) : Error(code, std::string(to_string(code))) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace strata
