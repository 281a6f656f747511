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
#include <string_view>
#include <vector>

#include "hnswru/layered_graph.hpp"

namespace hnswru {

enum class StrategyKind : std::uint8_t {
    kHnswRu,    // baseline replaced update: repair every one-hop neighbor from the two-hop pool
    kMnRuAlpha, // mutual neighbors, shared pool N1 + neighbors of N1, alpha 1
    kMnRuBeta,  // mutual neighbors, per-node pool N1 + own neighbors, alpha 1
    kMnRuGamma, // as beta with alpha 1.1
    kMnThnRu,   // gamma plus two-hop in-neighbors of the deleted slot
};

struct UpdateStrategy {
    StrategyKind kind = StrategyKind::kMnRuGamma;
    float alpha = 1.1f;

    /// Strategy with its customary alpha (1.0 or 1.1).
    static UpdateStrategy of(StrategyKind kind);
    /// Parses hnsw-ru | mn-ru-alpha | mn-ru-beta | mn-ru-gamma | mn-thn-ru.
    static UpdateStrategy parse(std::string_view name);

    std::string_view name() const;
};

inline constexpr StrategyKind kAllStrategies[] = {
    StrategyKind::kHnswRu, StrategyKind::kMnRuAlpha, StrategyKind::kMnRuBeta,
    StrategyKind::kMnRuGamma, StrategyKind::kMnThnRu};

/// Per-layer repair set and the candidate pool of each member.
struct RepairPlan {
    struct Target {
        SlotId slot;
        std::vector<SlotId> candidates;
    };
    struct Layer {
        std::vector<SlotId> one_hop;  // N1
        std::vector<SlotId> mutual;   // N2
        std::vector<Target> targets;  // repair set with pools
    };

    SlotId deleted_slot = kNoSlot;
    std::vector<Layer> layers;  // index = layer, 0..level(deleted_slot)
};

/// Tombstones a live label. Throws kNotFound for an unknown label and
/// kDoubleDelete when its slot is already deleted.
void mark_delete(LayeredGraph& graph, Label label);

/// Computes which nodes get re-wired and from which candidates, without
/// touching the graph. Deleted slots other than `deleted_slot` never appear as
/// candidates; `deleted_slot` stands for the incoming point.
RepairPlan plan_repair(const LayeredGraph& graph, SlotId deleted_slot, UpdateStrategy strategy);

/// Re-selects every target's list from its pool with `alpha`, measuring from
/// the target's own vector. The slot's vector must already hold the new data.
void apply_repair(LayeredGraph& graph, const RepairPlan& plan, float alpha);

/// Baseline replaced update. Falls through to insert when no slot is deleted.
SlotId hnsw_ru_insert(LayeredGraph& graph, std::span<const float> vec, Label label);

/// Mutual-neighbor repair around a deleted slot that is about to receive
/// `vec`. Writes `vec` into the slot, then re-wires the repair set of every
/// layer 0..level(slot). Throws kState when the slot is not deleted or
/// `strategy` is the baseline.
void mn_repair(LayeredGraph& graph, SlotId deleted_slot, std::span<const float> vec,
               UpdateStrategy strategy);

/// Installs the new point in a repaired slot. The point inherits the slot's
/// level; descent runs from the index top layer to level+1, then the slot is
/// linked on level..0. Clears the tombstone and dequeues the slot.
SlotId mn_update_insert(LayeredGraph& graph, SlotId deleted_slot, std::span<const float> vec,
                        Label label);

/// Dispatch: plain insert when nothing is deleted, the baseline for kHnswRu,
/// otherwise FIFO pop, mn_repair and mn_update_insert.
SlotId replace_update(LayeredGraph& graph, std::span<const float> vec, Label label,
                      UpdateStrategy strategy);

}  // namespace hnswru
