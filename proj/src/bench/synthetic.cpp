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

#include "hnswru/bench/synthetic.hpp"

#include <random>

namespace hnswru::bench {

FloatVectors make_gaussian(std::size_t n, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<float> normal(0.0f, 1.0f);
    FloatVectors out{dim, std::vector<float>(n * dim)};
    for (auto& x : out.values) x = normal(rng);
    return out;
}

FloatVectors make_uniform(std::size_t n, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> uniform(0.0f, 1.0f);
    FloatVectors out{dim, std::vector<float>(n * dim)};
    for (auto& x : out.values) x = uniform(rng);
    return out;
}

FloatVectors make_clustered(std::size_t n, std::size_t dim, std::size_t clusters, float spread,
                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<float> normal(0.0f, 1.0f);
    auto centers = make_gaussian(clusters, dim, seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::size_t> pick(0, clusters - 1);
    FloatVectors out{dim, std::vector<float>(n * dim)};
    for (std::size_t i = 0; i < n; ++i) {
        const float* c = centers.row(pick(rng));
        float* row = out.row(i);
        for (std::size_t j = 0; j < dim; ++j) row[j] = c[j] + spread * normal(rng);
    }
    return out;
}

}  // namespace hnswru::bench
