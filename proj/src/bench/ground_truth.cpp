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

#include "hnswru/bench/ground_truth.hpp"

#include <algorithm>
#include <unordered_set>

namespace hnswru::bench {

namespace {

struct Scored {
    float distance;
    Label label;
    bool operator<(const Scored& o) const noexcept {
        return distance != o.distance ? distance < o.distance : label < o.label;
    }
};

std::vector<Label> top_k(std::vector<Scored>& scored, std::size_t k) {
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k), scored.end());
    std::vector<Label> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = scored[i].label;
    return out;
}

}  // namespace

LabelLists brute_force_gt(const FloatVectors& base, const FloatVectors& queries, std::size_t k,
                          Metric metric, std::span<const Label> labels) {
    if (queries.size() > 0 && base.dim != queries.dim) {
        throw Error(ErrorCode::kInput, "base and query dimensions differ");
    }
    if (k == 0 || k > base.size()) {
        throw Error(ErrorCode::kParameter, "k must be in [1, |base|]");
    }
    if (!labels.empty() && labels.size() != base.size()) {
        throw Error(ErrorCode::kInput, "label count differs from base size");
    }
    LabelLists out(queries.size());
    std::vector<Scored> scored(base.size());
    for (std::size_t q = 0; q < queries.size(); ++q) {
        for (std::size_t i = 0; i < base.size(); ++i) {
            scored[i] = {distance_unchecked(queries.row(q), base.row(i), base.dim, metric),
                         labels.empty() ? static_cast<Label>(i) : labels[i]};
        }
        out[q] = top_k(scored, k);
    }
    return out;
}

LabelLists brute_force_gt(const LayeredGraph& g, const FloatVectors& queries, std::size_t k) {
    if (queries.size() > 0 && g.dim() != queries.dim) {
        throw Error(ErrorCode::kInput, "index and query dimensions differ");
    }
    if (k == 0 || k > g.live_count()) {
        throw Error(ErrorCode::kParameter, "k must be in [1, live count]");
    }
    std::vector<SlotId> live;
    live.reserve(g.live_count());
    for (SlotId s = 0; s < g.slot_count(); ++s) {
        if (!g.is_deleted(s)) live.push_back(s);
    }
    LabelLists out(queries.size());
    std::vector<Scored> scored(live.size());
    for (std::size_t q = 0; q < queries.size(); ++q) {
        for (std::size_t i = 0; i < live.size(); ++i) {
            scored[i] = {g.distance(queries.row(q), live[i]), g.label(live[i])};
        }
        out[q] = top_k(scored, k);
    }
    return out;
}

double recall_at_k(std::span<const Label> result, std::span<const Label> gt, std::size_t k) {
    if (k == 0 || gt.size() < k) {
        throw Error(ErrorCode::kParameter, "ground truth shorter than k");
    }
    std::unordered_set<Label> truth(gt.begin(), gt.begin() + static_cast<std::ptrdiff_t>(k));
    const std::size_t n = std::min(k, result.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) hits += truth.erase(result[i]);
    return static_cast<double>(hits) / static_cast<double>(k);
}

double recall_at_k(const SearchResult& result, std::span<const Label> gt, std::size_t k) {
    std::vector<Label> labels;
    labels.reserve(result.size());
    for (const auto& e : result.entries) labels.push_back(e.label);
    return recall_at_k(labels, gt, k);
}

IntVectors to_ivecs(const LabelLists& lists) {
    IntVectors out;
    out.dim = lists.empty() ? 0 : lists.front().size();
    for (const auto& row : lists) {
        for (Label l : row) out.values.push_back(static_cast<std::int32_t>(l));
    }
    return out;
}

}  // namespace hnswru::bench
