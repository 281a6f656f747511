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

#include "hnswru/update.hpp"

#include <algorithm>

#include "hnswru/search.hpp"

namespace hnswru {

UpdateStrategy UpdateStrategy::of(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::kMnRuGamma:
        case StrategyKind::kMnThnRu:
            return {kind, 1.1f};
        default:
            return {kind, 1.0f};
    }
}

UpdateStrategy UpdateStrategy::parse(std::string_view name) {
    for (StrategyKind kind : kAllStrategies) {
        if (UpdateStrategy::of(kind).name() == name) return UpdateStrategy::of(kind);
    }
    throw Error(ErrorCode::kParameter, "unknown strategy '" + std::string(name) + "'");
}

std::string_view UpdateStrategy::name() const {
    switch (kind) {
        case StrategyKind::kHnswRu:
            return "hnsw-ru";
        case StrategyKind::kMnRuAlpha:
            return "mn-ru-alpha";
        case StrategyKind::kMnRuBeta:
            return "mn-ru-beta";
        case StrategyKind::kMnRuGamma:
            return "mn-ru-gamma";
        case StrategyKind::kMnThnRu:
            return "mn-thn-ru";
    }
    return "unknown";
}

void mark_delete(LayeredGraph& g, Label label) {
    auto slot = g.find_registered(label);
    if (!slot) {
        throw Error(ErrorCode::kNotFound, "label " + std::to_string(label) + " not in index");
    }
    if (g.is_deleted(*slot)) {
        throw Error(ErrorCode::kDoubleDelete,
                    "label " + std::to_string(label) + " is already deleted");
    }
    g.mark_deleted(*slot);
}

namespace {

bool holds_edge(const LayeredGraph& g, SlotId from, SlotId to, int layer) {
    const auto& list = g.neighbors(from, layer);
    return std::find(list.begin(), list.end(), to) != list.end();
}

void sort_unique(std::vector<SlotId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

/// Pool minus the target itself and minus tombstones other than the slot
/// being replaced.
std::vector<SlotId> eligible(const LayeredGraph& g, std::vector<SlotId> pool, SlotId target,
                             SlotId replaced) {
    sort_unique(pool);
    std::erase_if(pool, [&](SlotId s) {
        return s == target || (s != replaced && g.is_deleted(s));
    });
    return pool;
}

std::vector<SlotId> two_hop(const LayeredGraph& g, const std::vector<SlotId>& one_hop, int layer) {
    std::vector<SlotId> out;
    for (SlotId v : one_hop) {
        const auto& list = g.neighbors(v, layer);
        out.insert(out.end(), list.begin(), list.end());
    }
    sort_unique(out);
    return out;
}

void check_insertable(const LayeredGraph& g, std::span<const float> vec, Label label) {
    if (vec.size() != g.dim()) {
        throw Error(ErrorCode::kInput, "vector dimension mismatch");
    }
    if (g.contains(label)) {
        throw Error(ErrorCode::kConflict, "label " + std::to_string(label) + " is already live");
    }
}

}  // namespace

RepairPlan plan_repair(const LayeredGraph& g, SlotId d, UpdateStrategy strategy) {
    RepairPlan plan;
    plan.deleted_slot = d;
    const int top = g.level(d);
    plan.layers.resize(static_cast<std::size_t>(top) + 1);

    for (int layer = 0; layer <= top; ++layer) {
        auto& out = plan.layers[static_cast<std::size_t>(layer)];
        out.one_hop = g.neighbors(d, layer);
        const auto& n1 = out.one_hop;
        for (SlotId v : n1) {
            if (holds_edge(g, v, d, layer)) out.mutual.push_back(v);
        }
        if (n1.empty()) continue;

        switch (strategy.kind) {
            case StrategyKind::kHnswRu: {
                // one shared pool: the new point, one-hop and two-hop neighbors
                std::vector<SlotId> pool = two_hop(g, n1, layer);
                pool.insert(pool.end(), n1.begin(), n1.end());
                pool.push_back(d);
                for (SlotId v : n1) {
                    out.targets.push_back({v, eligible(g, pool, v, d)});
                }
                break;
            }
            case StrategyKind::kMnRuAlpha: {
                std::vector<SlotId> pool = two_hop(g, n1, layer);
                pool.insert(pool.end(), n1.begin(), n1.end());
                pool.push_back(d);
                for (SlotId u : out.mutual) {
                    out.targets.push_back({u, eligible(g, pool, u, d)});
                }
                break;
            }
            case StrategyKind::kMnRuBeta:
            case StrategyKind::kMnRuGamma:
            case StrategyKind::kMnThnRu: {
                std::vector<SlotId> repair = out.mutual;
                if (strategy.kind == StrategyKind::kMnThnRu) {
                    for (SlotId w : two_hop(g, n1, layer)) {
                        if (w == d || std::find(n1.begin(), n1.end(), w) != n1.end()) continue;
                        if (holds_edge(g, w, d, layer)) repair.push_back(w);
                    }
                }
                for (SlotId u : repair) {
                    std::vector<SlotId> pool = g.neighbors(u, layer);
                    pool.insert(pool.end(), n1.begin(), n1.end());
                    pool.push_back(d);
                    out.targets.push_back({u, eligible(g, std::move(pool), u, d)});
                }
                break;
            }
        }
    }
    return plan;
}

void apply_repair(LayeredGraph& g, const RepairPlan& plan, float alpha) {
    for (std::size_t i = 0; i < plan.layers.size(); ++i) {
        const int layer = static_cast<int>(i);
        for (const auto& target : plan.layers[i].targets) {
            std::vector<Candidate> pool;
            pool.reserve(target.candidates.size());
            const float* base = g.data(target.slot);
            for (SlotId s : target.candidates) pool.push_back({g.distance(base, s), s});
            auto kept = select_neighbors(g, std::move(pool), g.max_degree(layer), alpha);
            auto& list = g.mutable_neighbors(target.slot, layer);
            list.clear();
            for (const auto& c : kept) list.push_back(c.slot);
        }
    }
}

SlotId hnsw_ru_insert(LayeredGraph& g, std::span<const float> vec, Label label) {
    if (g.deleted_list().empty()) {
        return insert(g, vec, label);
    }
    check_insertable(g, vec, label);
    SlotId d = g.pop_deleted();
    g.set_vector(d, vec);
    apply_repair(g, plan_repair(g, d, UpdateStrategy::of(StrategyKind::kHnswRu)), 1.0f);
    g.reassign(d, label);
    connect_slot(g, d);
    return d;
}

void mn_repair(LayeredGraph& g, SlotId d, std::span<const float> vec, UpdateStrategy strategy) {
    if (!g.is_allocated(d) || !g.is_deleted(d)) {
        throw Error(ErrorCode::kState, "slot " + std::to_string(d) + " is not deleted");
    }
    if (strategy.kind == StrategyKind::kHnswRu) {
        throw Error(ErrorCode::kState, "mutual-neighbor repair needs an MN strategy");
    }
    g.set_vector(d, vec);
    apply_repair(g, plan_repair(g, d, strategy), strategy.alpha);
}

SlotId mn_update_insert(LayeredGraph& g, SlotId d, std::span<const float> vec, Label label) {
    if (!g.is_allocated(d) || !g.is_deleted(d)) {
        throw Error(ErrorCode::kState, "slot " + std::to_string(d) + " is not deleted");
    }
    check_insertable(g, vec, label);
    g.set_vector(d, vec);
    g.reassign(d, label);
    g.remove_from_deleted_list(d);
    connect_slot(g, d);
    return d;
}

SlotId replace_update(LayeredGraph& g, std::span<const float> vec, Label label,
                      UpdateStrategy strategy) {
    if (g.deleted_list().empty()) {
        return insert(g, vec, label);
    }
    if (strategy.kind == StrategyKind::kHnswRu) {
        return hnsw_ru_insert(g, vec, label);
    }
    check_insertable(g, vec, label);
    SlotId d = g.pop_deleted();
    mn_repair(g, d, vec, strategy);
    return mn_update_insert(g, d, vec, label);
}

}  // namespace hnswru
