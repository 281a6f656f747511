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

#include "hnswru/distance.hpp"

#include <cmath>

namespace hnswru {

float l2_squared(const float* a, const float* b, std::size_t dim) noexcept {
    float acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    std::size_t i = 0;
    for (; i + 8 <= dim; i += 8) {
        for (std::size_t j = 0; j < 8; ++j) {
            float diff = a[i + j] - b[i + j];
            acc[j] += diff * diff;
        }
    }
    float sum = ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7]));
    for (; i < dim; ++i) {
        float diff = a[i] - b[i];
        sum += diff * diff;
    }
    return sum;
}

float dot(const float* a, const float* b, std::size_t dim) noexcept {
    float acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    std::size_t i = 0;
    for (; i + 8 <= dim; i += 8) {
        for (std::size_t j = 0; j < 8; ++j) {
            acc[j] += a[i + j] * b[i + j];
        }
    }
    float sum = ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7]));
    for (; i < dim; ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

float distance_unchecked(const float* a, const float* b, std::size_t dim, Metric metric) noexcept {
    switch (metric) {
        case Metric::kL2:
            return l2_squared(a, b, dim);
        case Metric::kInnerProduct:
            return 1.0f - dot(a, b, dim);
        case Metric::kCosine: {
            float na = dot(a, a, dim);
            float nb = dot(b, b, dim);
            if (na <= 0.0f || nb <= 0.0f) {
                return 1.0f;
            }
            float d = 1.0f - dot(a, b, dim) / std::sqrt(na * nb);
            // rounding can push colinear pairs slightly below zero
            return d < 0.0f ? 0.0f : d;
        }
    }
    return 0.0f;
}

float distance(std::span<const float> a, std::span<const float> b, Metric metric) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::kInput, "dimension mismatch: " + std::to_string(a.size()) + " vs " +
                                           std::to_string(b.size()));
    }
    return distance_unchecked(a.data(), b.data(), a.size(), metric);
}

float occlusion_factor(float alpha, Metric metric) noexcept {
    return metric == Metric::kL2 ? alpha * alpha : alpha;
}

}  // namespace hnswru
