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

#include "hnswru/layered_graph.hpp"

namespace hnswru {

/// Ascending (label, distance) list; no deleted slot, no repeated label.
struct SearchResult {
    std::vector<Neighbor> entries;

    std::size_t size() const noexcept { return entries.size(); }
    bool empty() const noexcept { return entries.empty(); }
};

/// Which slots may enter the result list of a beam search.
enum class ResultFilter { kAll, kLiveOnly };

/// Strict ordering used for every candidate comparison: distance, then
/// label, then slot.
struct CandidateOrder {
    const LayeredGraph* graph;
    bool operator()(const Candidate& a, const Candidate& b) const noexcept {
        if (a.distance != b.distance) return a.distance < b.distance;
        Label la = graph->label(a.slot);
        Label lb = graph->label(b.slot);
        if (la != lb) return la < lb;
        return a.slot < b.slot;
    }
};

/// Best-first beam search restricted to one layer. Returns up to `ef` slots in
/// ascending order. With kAll deleted slots may be returned; with kLiveOnly
/// they still route but never enter the result list.
std::vector<Candidate> search_layer(const LayeredGraph& graph, std::span<const float> query,
                                    std::span<const SlotId> entries, std::size_t ef, int layer,
                                    ResultFilter filter = ResultFilter::kAll);

/// Greedy walk on one layer: moves to any strictly closer neighbor until none.
SlotId greedy_closest(const LayeredGraph& graph, const float* query, SlotId start, int layer);

/// Alpha-RNG selection. Each candidate carries its distance to the query
/// point. Candidates are visited in ascending order; e is kept iff
/// alpha * d(s, e) > d(query, e) for every already kept s. Stops once
/// `max_count` are kept. alpha = 1 is the classic heuristic. Duplicate slots
/// are collapsed; the result is ascending.
std::vector<Candidate> select_neighbors(const LayeredGraph& graph,
                                        std::vector<Candidate> candidates, std::size_t max_count,
                                        float alpha);

/// Adds `from -> to` at `layer`, re-pruning `from` with the classic heuristic
/// when its list is full. No-op when the edge exists.
void link_with_shrink(LayeredGraph& graph, SlotId from, SlotId to, int layer);

/// Standard insertion of a new point into a fresh slot. Throws kConflict for a
/// live label and kCapacity when no slot is free.
SlotId insert(LayeredGraph& graph, std::span<const float> vec, Label label);

/// Links `slot` into layers level(slot)..0: greedy descent from the entry
/// point down to level+1, then a beam search of width ef_construction, a
/// neighbor selection of M and back-links at every lower layer. The slot's
/// own lists are replaced; its current adjacency is used for routing first.
void connect_slot(LayeredGraph& graph, SlotId slot);

/// k nearest live points. Throws kEmptyIndex on an empty graph and kParameter
/// when ef < k or k == 0.
SearchResult knn_search(const LayeredGraph& graph, std::span<const float> query, std::size_t k,
                        std::size_t ef);

}  // namespace hnswru
