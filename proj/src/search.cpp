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

#include "hnswru/search.hpp"

#include <algorithm>
#include <queue>

namespace hnswru {

namespace {

struct Worse {
    CandidateOrder order;
    bool operator()(const Candidate& a, const Candidate& b) const noexcept { return order(a, b); }
};

struct Better {
    CandidateOrder order;
    bool operator()(const Candidate& a, const Candidate& b) const noexcept { return order(b, a); }
};

}  // namespace

std::vector<Candidate> search_layer(const LayeredGraph& g, std::span<const float> query,
                                    std::span<const SlotId> entries, std::size_t ef, int layer,
                                    ResultFilter filter) {
    if (entries.empty()) {
        throw Error(ErrorCode::kInput, "search_layer needs at least one entry slot");
    }
    if (ef == 0) {
        throw Error(ErrorCode::kParameter, "ef must be >= 1");
    }
    if (query.size() != g.dim()) {
        throw Error(ErrorCode::kInput, "query dimension mismatch");
    }
    const CandidateOrder order{&g};
    // frontier pops the closest first; results keeps the worst on top
    std::priority_queue<Candidate, std::vector<Candidate>, Better> frontier{Better{order}};
    std::priority_queue<Candidate, std::vector<Candidate>, Worse> results{Worse{order}};
    auto visited = g.visited();
    const bool live_only = filter == ResultFilter::kLiveOnly;

    for (SlotId e : entries) {
        if (!g.is_allocated(e) || g.level(e) < layer) {
            throw Error(ErrorCode::kInput, "entry slot " + std::to_string(e) +
                                               " does not exist at layer " +
                                               std::to_string(layer));
        }
        if (!visited.visit(e)) continue;
        Candidate c{g.distance(query.data(), e), e};
        frontier.push(c);
        if (!live_only || !g.is_deleted(e)) {
            results.push(c);
            if (results.size() > ef) results.pop();
        }
    }

    while (!frontier.empty()) {
        Candidate current = frontier.top();
        if (results.size() >= ef && order(results.top(), current)) {
            break;
        }
        frontier.pop();
        for (SlotId nb : g.neighbors(current.slot, layer)) {
            if (!visited.visit(nb)) continue;
            Candidate c{g.distance(query.data(), nb), nb};
            if (results.size() < ef || order(c, results.top())) {
                frontier.push(c);
                if (!live_only || !g.is_deleted(nb)) {
                    results.push(c);
                    if (results.size() > ef) results.pop();
                }
            }
        }
    }

    std::vector<Candidate> out(results.size());
    for (auto i = out.size(); i-- > 0;) {
        out[i] = results.top();
        results.pop();
    }
    return out;
}

SlotId greedy_closest(const LayeredGraph& g, const float* query, SlotId start, int layer) {
    SlotId current = start;
    float best = g.distance(query, current);
    bool changed = true;
    while (changed) {
        changed = false;
        for (SlotId nb : g.neighbors(current, layer)) {
            float d = g.distance(query, nb);
            if (d < best) {
                best = d;
                current = nb;
                changed = true;
            }
        }
    }
    return current;
}

std::vector<Candidate> select_neighbors(const LayeredGraph& g, std::vector<Candidate> candidates,
                                        std::size_t max_count, float alpha) {
    const CandidateOrder order{&g};
    std::sort(candidates.begin(), candidates.end(), order);
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const Candidate& a, const Candidate& b) {
                                     return a.slot == b.slot;
                                 }),
                     candidates.end());

    const float factor = occlusion_factor(alpha, g.metric());
    std::vector<Candidate> kept;
    kept.reserve(std::min(max_count, candidates.size()));
    for (const Candidate& e : candidates) {
        if (kept.size() >= max_count) break;
        bool occluded = false;
        for (const Candidate& s : kept) {
            if (factor * g.distance(s.slot, e.slot) <= e.distance) {
                occluded = true;
                break;
            }
        }
        if (!occluded) kept.push_back(e);
    }
    return kept;
}

void link_with_shrink(LayeredGraph& g, SlotId from, SlotId to, int layer) {
    auto& list = g.mutable_neighbors(from, layer);
    if (std::find(list.begin(), list.end(), to) != list.end()) return;
    const std::size_t bound = g.max_degree(layer);
    if (list.size() < bound) {
        list.push_back(to);
        return;
    }
    std::vector<Candidate> pool;
    pool.reserve(list.size() + 1);
    const float* base = g.data(from);
    for (SlotId s : list) pool.push_back({g.distance(base, s), s});
    pool.push_back({g.distance(base, to), to});
    auto kept = select_neighbors(g, std::move(pool), bound, 1.0f);
    list.clear();
    for (const auto& c : kept) list.push_back(c.slot);
}

namespace {

/// Beam-search, select and back-link `slot` on layers top..0 starting from `entry`.
void link_layers(LayeredGraph& g, SlotId slot, SlotId entry, int top) {
    const auto& p = g.params();
    std::vector<SlotId> eps{entry};
    for (int layer = top; layer >= 0; --layer) {
        auto found = search_layer(g, g.vector(slot), eps, p.ef_construction, layer);
        std::erase_if(found, [slot](const Candidate& c) { return c.slot == slot; });
        if (found.empty()) {
            // nothing but the slot itself is reachable here; keep routing from it
            eps.assign(1, slot);
            continue;
        }
        auto chosen = select_neighbors(g, found, p.M, 1.0f);
        auto& own = g.mutable_neighbors(slot, layer);
        own.clear();
        for (const auto& c : chosen) own.push_back(c.slot);
        for (const auto& c : chosen) link_with_shrink(g, c.slot, slot, layer);
        eps.clear();
        for (const auto& c : found) eps.push_back(c.slot);
    }
}

}  // namespace

SlotId insert(LayeredGraph& g, std::span<const float> vec, Label label) {
    if (g.contains(label)) {
        throw Error(ErrorCode::kConflict, "label " + std::to_string(label) + " is already live");
    }
    if (g.slot_count() >= g.capacity()) {
        throw Error(ErrorCode::kCapacity, "index is full (" + std::to_string(g.capacity()) + ")");
    }
    if (vec.size() != g.dim()) {
        throw Error(ErrorCode::kInput, "vector dimension mismatch");
    }
    const int level = g.draw_level();
    const auto entry = g.entry_point();
    const int top = g.max_layer();
    SlotId slot = g.add_node(label, vec, level);
    if (!entry) return slot;

    SlotId ep = *entry;
    for (int layer = top; layer > level; --layer) {
        ep = greedy_closest(g, vec.data(), ep, layer);
    }
    link_layers(g, slot, ep, std::min(level, top));
    return slot;
}

void connect_slot(LayeredGraph& g, SlotId slot) {
    const auto entry = g.entry_point();
    const int level = g.level(slot);
    if (!entry || (*entry == slot && g.slot_count() == 1)) return;
    if (level > g.max_layer()) {
        throw Error(ErrorCode::kState, "slot level exceeds the index max layer");
    }
    SlotId ep = *entry;
    for (int layer = g.max_layer(); layer > level; --layer) {
        ep = greedy_closest(g, g.data(slot), ep, layer);
    }
    link_layers(g, slot, ep, level);
}

SearchResult knn_search(const LayeredGraph& g, std::span<const float> query, std::size_t k,
                        std::size_t ef) {
    if (k == 0) {
        throw Error(ErrorCode::kParameter, "k must be >= 1");
    }
    if (ef < k) {
        throw Error(ErrorCode::kParameter, "ef (" + std::to_string(ef) + ") must be >= k (" +
                                               std::to_string(k) + ")");
    }
    const auto entry = g.entry_point();
    if (!entry) {
        throw Error(ErrorCode::kEmptyIndex, "search on an empty index");
    }
    if (query.size() != g.dim()) {
        throw Error(ErrorCode::kInput, "query dimension mismatch");
    }
    SearchResult result;
    if (g.live_count() == 0) return result;

    SlotId ep = *entry;
    for (int layer = g.max_layer(); layer > 0; --layer) {
        ep = greedy_closest(g, query.data(), ep, layer);
    }
    SlotId eps[] = {ep};
    auto found = search_layer(g, query, eps, ef, 0, ResultFilter::kLiveOnly);
    const std::size_t n = std::min(k, found.size());
    result.entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.entries.push_back({g.label(found[i].slot), found[i].distance});
    }
    return result;
}

}  // namespace hnswru
