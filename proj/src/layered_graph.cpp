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

#include "hnswru/layered_graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hnswru {

std::string_view to_string(Metric metric) {
    switch (metric) {
        case Metric::kL2:
            return "l2";
        case Metric::kInnerProduct:
            return "ip";
        case Metric::kCosine:
            return "cosine";
    }
    return "unknown";
}

Metric metric_from_string(std::string_view name) {
    if (name == "l2") return Metric::kL2;
    if (name == "ip") return Metric::kInnerProduct;
    if (name == "cosine") return Metric::kCosine;
    throw Error(ErrorCode::kParameter, "unknown metric '" + std::string(name) + "'");
}

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::kParameter:
            return "parameter";
        case ErrorCode::kInput:
            return "input";
        case ErrorCode::kConflict:
            return "conflict";
        case ErrorCode::kCapacity:
            return "capacity";
        case ErrorCode::kNotFound:
            return "not-found";
        case ErrorCode::kDoubleDelete:
            return "double-delete";
        case ErrorCode::kState:
            return "state";
        case ErrorCode::kEmptyIndex:
            return "empty-index";
        case ErrorCode::kFormat:
            return "format";
        case ErrorCode::kConfig:
            return "config";
    }
    return "unknown";
}

IndexParams IndexParams::resolved() const {
    IndexParams p = *this;
    if (p.M < 2) {
        throw Error(ErrorCode::kParameter, "M must be >= 2, got " + std::to_string(p.M));
    }
    if (p.M_max0 == 0) {
        p.M_max0 = 2 * p.M;
    }
    if (p.M_max0 < p.M) {
        throw Error(ErrorCode::kParameter, "M_max0 must be >= M");
    }
    if (p.ef_construction < p.M) {
        throw Error(ErrorCode::kParameter, "ef_construction must be >= M, got " +
                                               std::to_string(p.ef_construction));
    }
    if (p.level_lambda == 0.0) {
        p.level_lambda = 1.0 / std::log(static_cast<double>(p.M));
    }
    if (!(p.level_lambda > 0.0)) {
        throw Error(ErrorCode::kParameter, "level_lambda must be positive");
    }
    return p;
}

int level_from_uniform(double u, double lambda) {
    if (!(u > 0.0 && u <= 1.0)) {
        throw Error(ErrorCode::kParameter, "uniform draw outside (0, 1]");
    }
    // -ln(1/M) * (1/ln M) lands a hair below an integer in floating point
    double x = -std::log(u) * lambda;
    return static_cast<int>(std::floor(x + 1e-9));
}

// ---------------------------------------------------------------------------
// VisitedPool

VisitedPool::Handle::Handle(VisitedPool* pool, std::size_t size) : pool_(pool) {
    {
        std::lock_guard lock(pool_->mu_);
        if (!pool_->free_.empty()) {
            list_ = std::move(pool_->free_.back());
            pool_->free_.pop_back();
        }
    }
    if (!list_) {
        list_ = std::make_unique<List>();
    }
    if (list_->marks.size() < size) {
        list_->marks.assign(size, 0);
        list_->epoch = 0;
    }
    if (++list_->epoch == 0) {
        std::fill(list_->marks.begin(), list_->marks.end(), 0);
        list_->epoch = 1;
    }
}

VisitedPool::Handle::Handle(Handle&& other) noexcept
    : pool_(other.pool_), list_(std::move(other.list_)) {}

VisitedPool::Handle::~Handle() {
    if (list_) {
        std::lock_guard lock(pool_->mu_);
        pool_->free_.push_back(std::move(list_));
    }
}

// ---------------------------------------------------------------------------
// LayeredGraph

LayeredGraph::LayeredGraph(const IndexParams& params, std::size_t dim, std::size_t capacity)
    : params_(params.resolved()), dim_(dim), capacity_(capacity), rng_(params_.rng_seed) {
    if (dim == 0) {
        throw Error(ErrorCode::kParameter, "dimension must be >= 1");
    }
    if (capacity == 0) {
        throw Error(ErrorCode::kParameter, "capacity must be >= 1");
    }
    if (capacity >= kNoSlot) {
        throw Error(ErrorCode::kParameter, "capacity exceeds slot id range");
    }
    vectors_.reserve(capacity * dim);
    labels_.reserve(capacity);
    levels_.reserve(capacity);
    deleted_.reserve(capacity);
    links_.reserve(capacity);
}

std::optional<SlotId> LayeredGraph::find(Label label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end() || is_deleted(it->second)) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<SlotId> LayeredGraph::find_registered(Label label) const {
    auto it = label_index_.find(label);
    if (it == label_index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

int LayeredGraph::draw_level() {
    // 53 random bits mapped onto (0, 1]
    double u = static_cast<double>((rng_() >> 11) + 1) * 0x1.0p-53;
    return level_from_uniform(u, params_.level_lambda);
}

void LayeredGraph::check_dim(std::span<const float> vec) const {
    if (vec.size() != dim_) {
        throw Error(ErrorCode::kInput, "vector dimension " + std::to_string(vec.size()) +
                                           " does not match index dimension " +
                                           std::to_string(dim_));
    }
}

SlotId LayeredGraph::add_node(Label label, std::span<const float> vec, int level) {
    check_dim(vec);
    if (level < 0) {
        throw Error(ErrorCode::kParameter, "negative level");
    }
    if (contains(label)) {
        throw Error(ErrorCode::kConflict, "label " + std::to_string(label) + " is already live");
    }
    if (slot_count() >= capacity_) {
        throw Error(ErrorCode::kCapacity, "index is full (" + std::to_string(capacity_) + ")");
    }
    auto slot = static_cast<SlotId>(slot_count());
    vectors_.insert(vectors_.end(), vec.begin(), vec.end());
    labels_.push_back(label);
    levels_.push_back(level);
    deleted_.push_back(0);
    links_.emplace_back(static_cast<std::size_t>(level) + 1);
    label_index_[label] = slot;
    if (entry_ == kNoSlot || level > max_layer_) {
        entry_ = slot;
        max_layer_ = level;
    }
    return slot;
}

void LayeredGraph::mark_deleted(SlotId slot) {
    if (is_deleted(slot)) {
        throw Error(ErrorCode::kDoubleDelete, "slot " + std::to_string(slot) + " already deleted");
    }
    deleted_[slot] = 1;
    ++deleted_count_;
    deleted_list_.push_back(slot);
}

SlotId LayeredGraph::pop_deleted() {
    if (deleted_list_.empty()) {
        throw Error(ErrorCode::kState, "no deleted slot available");
    }
    SlotId slot = deleted_list_.front();
    deleted_list_.pop_front();
    return slot;
}

void LayeredGraph::remove_from_deleted_list(SlotId slot) {
    auto it = std::find(deleted_list_.begin(), deleted_list_.end(), slot);
    if (it != deleted_list_.end()) {
        deleted_list_.erase(it);
    }
}

void LayeredGraph::set_vector(SlotId slot, std::span<const float> vec) {
    check_dim(vec);
    std::copy(vec.begin(), vec.end(), vectors_.begin() + static_cast<std::ptrdiff_t>(slot * dim_));
}

void LayeredGraph::reassign(SlotId slot, Label label) {
    if (auto live = find(label); live && *live != slot) {
        throw Error(ErrorCode::kConflict, "label " + std::to_string(label) + " is already live");
    }
    auto old = label_index_.find(labels_[slot]);
    if (old != label_index_.end() && old->second == slot) {
        label_index_.erase(old);
    }
    labels_[slot] = label;
    label_index_[label] = slot;
    if (deleted_[slot]) {
        deleted_[slot] = 0;
        --deleted_count_;
    }
}

void LayeredGraph::set_entry_point(SlotId slot) {
    entry_ = slot;
    max_layer_ = levels_[slot];
}

bool operator==(const LayeredGraph& a, const LayeredGraph& b) {
    const auto& pa = a.params_;
    const auto& pb = b.params_;
    return pa.M == pb.M && pa.M_max0 == pb.M_max0 && pa.ef_construction == pb.ef_construction &&
           pa.metric == pb.metric && pa.level_lambda == pb.level_lambda &&
           pa.rng_seed == pb.rng_seed && a.dim_ == b.dim_ && a.capacity_ == b.capacity_ &&
           a.vectors_ == b.vectors_ && a.labels_ == b.labels_ && a.levels_ == b.levels_ &&
           a.deleted_ == b.deleted_ && a.links_ == b.links_ && a.label_index_ == b.label_index_ &&
           a.entry_ == b.entry_ && a.max_layer_ == b.max_layer_ &&
           a.deleted_list_ == b.deleted_list_ && a.deleted_count_ == b.deleted_count_ &&
           a.rng_ == b.rng_;
}

// ---------------------------------------------------------------------------
// audit

std::string_view to_string(StructureReport::Kind kind) {
    using K = StructureReport::Kind;
    switch (kind) {
        case K::kDegreeBound:
            return "degree-bound";
        case K::kSelfEdge:
            return "self-edge";
        case K::kDanglingSlot:
            return "dangling-slot";
        case K::kLayerMismatch:
            return "layer-mismatch";
        case K::kEntryPoint:
            return "entry-point";
        case K::kDeletedList:
            return "deleted-list";
        case K::kLabelIndex:
            return "label-index";
    }
    return "unknown";
}

std::size_t StructureReport::count(Kind kind) const {
    return static_cast<std::size_t>(std::count_if(
        findings.begin(), findings.end(), [kind](const Finding& f) { return f.kind == kind; }));
}

std::string StructureReport::summary() const {
    std::ostringstream os;
    os << findings.size() << " finding(s)";
    for (std::size_t i = 0; i < findings.size() && i < 10; ++i) {
        const auto& f = findings[i];
        os << "\n  " << to_string(f.kind) << " slot=" << f.slot << " layer=" << f.layer << ": "
           << f.detail;
    }
    return os.str();
}

StructureReport audit_structure(const LayeredGraph& g) {
    using K = StructureReport::Kind;
    StructureReport report;
    auto add = [&](K kind, SlotId slot, int layer, std::string detail) {
        report.findings.push_back({kind, slot, layer, std::move(detail)});
    };

    const auto n = static_cast<SlotId>(g.slot_count());
    int top = -1;
    for (SlotId s = 0; s < n; ++s) {
        top = std::max(top, g.level(s));
        for (int layer = 0; layer <= g.level(s); ++layer) {
            const auto& list = g.neighbors(s, layer);
            if (list.size() > g.max_degree(layer)) {
                add(K::kDegreeBound, s, layer,
                    std::to_string(list.size()) + " > " + std::to_string(g.max_degree(layer)));
            }
            for (SlotId nb : list) {
                if (nb == s) {
                    add(K::kSelfEdge, s, layer, "lists itself");
                } else if (nb >= n) {
                    add(K::kDanglingSlot, s, layer, "unallocated slot " + std::to_string(nb));
                } else if (g.level(nb) < layer) {
                    add(K::kLayerMismatch, s, layer,
                        "neighbor " + std::to_string(nb) + " has level " +
                            std::to_string(g.level(nb)));
                }
            }
        }
    }

    auto entry = g.entry_point();
    if (n == 0) {
        if (entry) add(K::kEntryPoint, *entry, -1, "entry point set on an empty graph");
    } else if (!entry) {
        add(K::kEntryPoint, kNoSlot, -1, "entry point absent on a non-empty graph");
    } else if (*entry >= n) {
        add(K::kEntryPoint, *entry, -1, "entry point is not allocated");
    } else if (g.level(*entry) != g.max_layer() || g.max_layer() != top) {
        add(K::kEntryPoint, *entry, g.max_layer(),
            "entry level " + std::to_string(g.level(*entry)) + ", max_layer " +
                std::to_string(g.max_layer()) + ", highest node level " + std::to_string(top));
    }

    std::vector<std::uint8_t> queued(n, 0);
    for (SlotId s : g.deleted_list()) {
        if (s >= n) {
            add(K::kDeletedList, s, -1, "unallocated slot queued");
            continue;
        }
        if (queued[s]++) add(K::kDeletedList, s, -1, "queued twice");
        if (!g.is_deleted(s)) add(K::kDeletedList, s, -1, "queued but not flagged");
    }
    for (SlotId s = 0; s < n; ++s) {
        if (g.is_deleted(s) && !queued[s]) add(K::kDeletedList, s, -1, "flagged but not queued");
        if (!g.is_deleted(s)) {
            auto found = g.find(g.label(s));
            if (!found || *found != s) {
                add(K::kLabelIndex, s, -1, "label " + std::to_string(g.label(s)) + " not mapped");
            }
        }
    }
    return report;
}

}  // namespace hnswru
