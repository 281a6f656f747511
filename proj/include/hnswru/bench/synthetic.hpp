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

#include <cstdint>

#include "hnswru/bench/vecs_io.hpp"

namespace hnswru::bench {

/// i.i.d. standard normal coordinates.
FloatVectors make_gaussian(std::size_t n, std::size_t dim, std::uint64_t seed);

/// i.i.d. uniform coordinates in [0, 1).
FloatVectors make_uniform(std::size_t n, std::size_t dim, std::uint64_t seed);

/// Gaussian mixture: `clusters` centers drawn from N(0, 1), points drawn
/// around a uniformly chosen center with standard deviation `spread`.
FloatVectors make_clustered(std::size_t n, std::size_t dim, std::size_t clusters, float spread,
                            std::uint64_t seed);

}  // namespace hnswru::bench
