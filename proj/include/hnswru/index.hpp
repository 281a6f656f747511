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

#include <shared_mutex>
#include <span>

#include "hnswru/layered_graph.hpp"
#include "hnswru/reachability.hpp"
#include "hnswru/search.hpp"
#include "hnswru/update.hpp"

namespace hnswru {

/// LayeredGraph behind a many-readers / one-writer lock.
///
/// knn_search, the audits and read() take the shared lock and may run
/// concurrently with each other. insert, mark_delete, replace_update and
/// write() take the exclusive lock, so no two mutations interleave and no
/// reader observes a half-applied repair.
class Index {
public:
    Index(const IndexParams& params, std::size_t dim, std::size_t capacity)
        : graph_(params, dim, capacity) {}
    explicit Index(LayeredGraph graph) : graph_(std::move(graph)) {}

    SlotId insert(std::span<const float> vec, Label label) {
        std::unique_lock lock(mu_);
        return hnswru::insert(graph_, vec, label);
    }
    void mark_delete(Label label) {
        std::unique_lock lock(mu_);
        hnswru::mark_delete(graph_, label);
    }
    SlotId replace_update(std::span<const float> vec, Label label, UpdateStrategy strategy) {
        std::unique_lock lock(mu_);
        return hnswru::replace_update(graph_, vec, label, strategy);
    }

    SearchResult knn_search(std::span<const float> query, std::size_t k, std::size_t ef) const {
        std::shared_lock lock(mu_);
        return hnswru::knn_search(graph_, query, k, ef);
    }
    ReachabilityReport audit_reachability() const {
        std::shared_lock lock(mu_);
        return reachability_report(graph_);
    }
    StructureReport audit_structure() const {
        std::shared_lock lock(mu_);
        return hnswru::audit_structure(graph_);
    }

    std::size_t live_count() const {
        std::shared_lock lock(mu_);
        return graph_.live_count();
    }

    /// Runs `fn(const LayeredGraph&)` under the shared lock.
    template <class Fn>
    decltype(auto) read(Fn&& fn) const {
        std::shared_lock lock(mu_);
        return std::forward<Fn>(fn)(static_cast<const LayeredGraph&>(graph_));
    }
    /// Runs `fn(LayeredGraph&)` under the exclusive lock.
    template <class Fn>
    decltype(auto) write(Fn&& fn) {
        std::unique_lock lock(mu_);
        return std::forward<Fn>(fn)(graph_);
    }

    /// Unlocked access for single-threaded callers.
    const LayeredGraph& graph() const noexcept { return graph_; }

private:
    mutable std::shared_mutex mu_;
    LayeredGraph graph_;
};

}  // namespace hnswru
