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
#include <vector>

#include "hnswru/bench/vecs_io.hpp"
#include "hnswru/layered_graph.hpp"
#include "hnswru/search.hpp"

namespace hnswru::bench {

using LabelLists = std::vector<std::vector<Label>>;

/// Exact k nearest base rows per query by full scan. Row i has label i unless
/// `labels` is given. Equal distances order by ascending label.
LabelLists brute_force_gt(const FloatVectors& base, const FloatVectors& queries, std::size_t k,
                          Metric metric, std::span<const Label> labels = {});

/// Exact k nearest live points of `graph`.
LabelLists brute_force_gt(const LayeredGraph& graph, const FloatVectors& queries, std::size_t k);

/// |first k of result ∩ first k of gt| / k. A short result still divides by k.
double recall_at_k(std::span<const Label> result, std::span<const Label> gt, std::size_t k);
double recall_at_k(const SearchResult& result, std::span<const Label> gt, std::size_t k);

IntVectors to_ivecs(const LabelLists& lists);

}  // namespace hnswru::bench
