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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hnswru {

/// Caller-assigned external identifier. Unique among live points.
using Label = std::uint64_t;
/// Dense internal storage index. Reused when a replacement insertion occupies it.
using SlotId = std::uint32_t;

inline constexpr SlotId kNoSlot = std::numeric_limits<SlotId>::max();

enum class Metric : std::uint8_t {
    kL2 = 0,            // squared Euclidean
    kInnerProduct = 1,  // 1 - <a, b>
    kCosine = 2,        // 1 - cos(a, b)
};

std::string_view to_string(Metric metric);
Metric metric_from_string(std::string_view name);

enum class ErrorCode : std::uint8_t {
    kParameter,
    kInput,
    kConflict,
    kCapacity,
    kNotFound,
    kDoubleDelete,
    kState,
    kEmptyIndex,
    kFormat,
    kConfig,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + " error: " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct IndexParams {
    std::size_t M = 16;
    /// Degree bound at layer 0. Zero selects the conventional 2 * M.
    std::size_t M_max0 = 0;
    std::size_t ef_construction = 200;
    Metric metric = Metric::kL2;
    /// Level normalization. Zero selects 1 / ln(M).
    double level_lambda = 0.0;
    std::uint64_t rng_seed = 100;

    /// Fills defaulted fields and checks M >= 2, M_max0 >= M, ef_construction >= M.
    IndexParams resolved() const;
};

/// Entry of a beam-search candidate list.
struct Candidate {
    float distance;
    SlotId slot;
};

/// One (label, distance) pair of a k-NN answer.
struct Neighbor {
    Label label;
    float distance;

    bool operator==(const Neighbor&) const = default;
};

}  // namespace hnswru
