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

#include <span>

#include "hnswru/types.hpp"

namespace hnswru {

float l2_squared(const float* a, const float* b, std::size_t dim) noexcept;
float dot(const float* a, const float* b, std::size_t dim) noexcept;

/// Distance under `metric` without dimension checks. Hot path.
float distance_unchecked(const float* a, const float* b, std::size_t dim, Metric metric) noexcept;

/// Checked distance. L2 is squared Euclidean: it orders points exactly like
/// Euclidean distance. Inner product is 1 - <a, b> and may go negative for
/// non-normalized inputs. Throws Error(kInput) on a dimension mismatch.
float distance(std::span<const float> a, std::span<const float> b, Metric metric);

/// Factor applied to a stored distance when testing alpha-occlusion, so that
/// alpha scales the underlying metric (alpha^2 for squared L2).
float occlusion_factor(float alpha, Metric metric) noexcept;

}  // namespace hnswru
