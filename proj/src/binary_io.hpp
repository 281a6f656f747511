// Copyright 2026-present the hnswru project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <type_traits>

#include "hnswru/types.hpp"

namespace hnswru::detail {

template <class T>
using bits_of = std::conditional_t<sizeof(T) == 1, std::uint8_t,
                std::conditional_t<sizeof(T) == 2, std::uint16_t,
                std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>>;

/// Writes `value` little-endian regardless of host order.
template <class T>
void put_le(std::ostream& out, T value) {
    static_assert(std::is_arithmetic_v<T>);
    auto bits = std::bit_cast<bits_of<T>>(value);
    char bytes[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
    }
    out.write(bytes, sizeof(T));
}

inline std::string offset_text(std::istream& in) {
    in.clear();
    auto pos = in.tellg();
    return pos < 0 ? std::string("unknown") : std::to_string(static_cast<long long>(pos));
}

/// Reads a little-endian value; false on clean end-of-stream before the
/// first byte, Error(kFormat) when the value is cut short.
template <class T>
bool try_get_le(std::istream& in, T& value, const char* what) {
    static_assert(std::is_arithmetic_v<T>);
    auto start = in.tellg();
    unsigned char bytes[sizeof(T)];
    in.read(reinterpret_cast<char*>(bytes), sizeof(T));
    auto got = in.gcount();
    if (got == 0 && in.eof()) return false;
    if (got != static_cast<std::streamsize>(sizeof(T))) {
        throw Error(ErrorCode::kFormat,
                    std::string("truncated ") + what + " at byte offset " +
                        (start < 0 ? std::string("unknown")
                                   : std::to_string(static_cast<long long>(start))));
    }
    bits_of<T> bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        bits |= static_cast<bits_of<T>>(static_cast<bits_of<T>>(bytes[i]) << (8 * i));
    }
    value = std::bit_cast<T>(bits);
    return true;
}

template <class T>
T get_le(std::istream& in, const char* what) {
    T value{};
    if (!try_get_le(in, value, what)) {
        throw Error(ErrorCode::kFormat, std::string("unexpected end of stream reading ") + what +
                                            " at byte offset " + offset_text(in));
    }
    return value;
}

}  // namespace hnswru::detail
