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

#include <deque>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hnswru/distance.hpp"
#include "hnswru/types.hpp"

namespace hnswru {

/// floor(-ln(u) * lambda) for u in (0, 1]. Throws Error(kParameter) outside that range.
int level_from_uniform(double u, double lambda);

/// Reusable visited-marks for graph traversals. One list per concurrent reader.
class VisitedPool {
public:
    class Handle {
    public:
        Handle(VisitedPool* pool, std::size_t size);
        Handle(Handle&&) noexcept;
        Handle& operator=(Handle&&) = delete;
        ~Handle();

        /// Marks `slot`; returns false when it was already marked.
        bool visit(SlotId slot) noexcept {
            auto& mark = list_->marks[slot];
            if (mark == list_->epoch) {
                return false;
            }
            mark = list_->epoch;
            return true;
        }
        bool visited(SlotId slot) const noexcept { return list_->marks[slot] == list_->epoch; }

    private:
        friend class VisitedPool;
        struct List {
            std::vector<std::uint32_t> marks;
            std::uint32_t epoch = 0;
        };
        VisitedPool* pool_;
        std::unique_ptr<List> list_;
    };

    VisitedPool() = default;
    VisitedPool(const VisitedPool&) {}
    VisitedPool& operator=(const VisitedPool&) { return *this; }

    Handle acquire(std::size_t size) { return Handle(this, size); }

private:
    std::mutex mu_;
    std::vector<std::unique_ptr<Handle::List>> free_;
};

/// Multi-layer directed proximity graph with slot storage, tombstones and a
/// FIFO of deleted slots awaiting reuse.
///
/// Accessors are safe for concurrent readers. Every mutating member requires
/// exclusive access; Index wraps a graph with that discipline.
///
/// A deleted slot keeps its vector and adjacency and still routes searches.
/// Its label stays registered until the label is inserted again or the slot
/// is reused, so a second delete of the same label is detected.
class LayeredGraph {
public:
    LayeredGraph(const IndexParams& params, std::size_t dim, std::size_t capacity);

    const IndexParams& params() const noexcept { return params_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t capacity() const noexcept { return capacity_; }
    Metric metric() const noexcept { return params_.metric; }

    /// Allocated slots, live or deleted.
    std::size_t slot_count() const noexcept { return levels_.size(); }
    std::size_t deleted_count() const noexcept { return deleted_count_; }
    std::size_t live_count() const noexcept { return slot_count() - deleted_count_; }
    bool empty() const noexcept { return levels_.empty(); }

    std::span<const float> vector(SlotId slot) const {
        return {vectors_.data() + static_cast<std::size_t>(slot) * dim_, dim_};
    }
    const float* data(SlotId slot) const noexcept {
        return vectors_.data() + static_cast<std::size_t>(slot) * dim_;
    }
    Label label(SlotId slot) const noexcept { return labels_[slot]; }
    int level(SlotId slot) const noexcept { return levels_[slot]; }
    bool is_deleted(SlotId slot) const noexcept { return deleted_[slot] != 0; }
    bool is_allocated(SlotId slot) const noexcept { return slot < levels_.size(); }

    const std::vector<SlotId>& neighbors(SlotId slot, int layer) const {
        return links_[slot][static_cast<std::size_t>(layer)];
    }
    std::vector<SlotId>& mutable_neighbors(SlotId slot, int layer) {
        return links_[slot][static_cast<std::size_t>(layer)];
    }

    std::optional<SlotId> entry_point() const noexcept {
        return entry_ == kNoSlot ? std::nullopt : std::optional<SlotId>(entry_);
    }
    /// Highest occupied layer, -1 for an empty graph.
    int max_layer() const noexcept { return max_layer_; }
    std::size_t max_degree(int layer) const noexcept {
        return layer == 0 ? params_.M_max0 : params_.M;
    }

    /// Slot of a live point.
    std::optional<SlotId> find(Label label) const;
    /// Slot registered for `label`, which may be a deleted one.
    std::optional<SlotId> find_registered(Label label) const;
    bool contains(Label label) const { return find(label).has_value(); }

    const std::deque<SlotId>& deleted_list() const noexcept { return deleted_list_; }

    float distance(const float* query, SlotId slot) const noexcept {
        return distance_unchecked(query, data(slot), dim_, params_.metric);
    }
    float distance(SlotId a, SlotId b) const noexcept {
        return distance_unchecked(data(a), data(b), dim_, params_.metric);
    }

    /// Draws a level from the graph's RNG.
    int draw_level();

    /// Allocates a fresh slot with empty adjacency on layers 0..level.
    /// Becomes the entry point when the graph was empty or `level` exceeds
    /// max_layer. Throws kConflict for a live label, kCapacity when full,
    /// kInput on a dimension mismatch.
    SlotId add_node(Label label, std::span<const float> vec, int level);

    /// Sets the tombstone and appends the slot to the deleted list.
    void mark_deleted(SlotId slot);
    /// Oldest deleted slot; it stays flagged until reassigned. Throws kState when none.
    SlotId pop_deleted();
    void remove_from_deleted_list(SlotId slot);

    void set_vector(SlotId slot, std::span<const float> vec);
    /// Gives a slot a new label and clears its tombstone.
    void reassign(SlotId slot, Label label);
    void set_entry_point(SlotId slot);

    VisitedPool::Handle visited() const { return visited_.acquire(capacity_); }

    /// Exact structural and state equality, RNG state included.
    friend bool operator==(const LayeredGraph& a, const LayeredGraph& b);

private:
    friend void save_snapshot(const LayeredGraph& graph, std::ostream& out);
    friend LayeredGraph load_snapshot(std::istream& in);

    void check_dim(std::span<const float> vec) const;

    IndexParams params_;
    std::size_t dim_;
    std::size_t capacity_;

    std::vector<float> vectors_;
    std::vector<Label> labels_;
    std::vector<int> levels_;
    std::vector<std::uint8_t> deleted_;
    std::vector<std::vector<std::vector<SlotId>>> links_;

    std::unordered_map<Label, SlotId> label_index_;
    SlotId entry_ = kNoSlot;
    int max_layer_ = -1;
    std::deque<SlotId> deleted_list_;
    std::size_t deleted_count_ = 0;

    std::mt19937_64 rng_;
    mutable VisitedPool visited_;
};

/// Findings of a structural scan.
struct StructureReport {
    enum class Kind {
        kDegreeBound,
        kSelfEdge,
        kDanglingSlot,
        kLayerMismatch,
        kEntryPoint,
        kDeletedList,
        kLabelIndex,
    };
    struct Finding {
        Kind kind;
        SlotId slot;
        int layer;
        std::string detail;
    };

    std::vector<Finding> findings;

    bool empty() const noexcept { return findings.empty(); }
    std::size_t count(Kind kind) const;
    std::string summary() const;
};

std::string_view to_string(StructureReport::Kind kind);

/// Degree bounds, self-edges, dangling or layer-mismatched slots, entry-point
/// and max-layer consistency, deleted-list and label-index consistency.
/// Requires no concurrent writers.
StructureReport audit_structure(const LayeredGraph& graph);

}  // namespace hnswru
