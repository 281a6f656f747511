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

#include <memory>
#include <mutex>
#include <vector>

#include "hnswru/index.hpp"

namespace hnswru {

inline constexpr std::size_t kDefaultRebuildThreshold = 40000;

/// The pieces of one dual search, for inspection.
struct DualSearchTrace {
    SearchResult main;
    SearchResult backup;          // after dropping entries stale in main
    std::vector<Neighbor> pool;   // union keyed by label, ascending
    SearchResult result;          // first k of pool
};

struct RebuildEvent {
    std::size_t rebuild_number;
    std::size_t unreachable;  // |U| fed into the backup
};

/// Main index plus a backup index over the points the main index can no
/// longer find by search. The backup is rebuilt from scratch once more than
/// `tau` replaced updates have been recorded since the last rebuild.
///
/// Between rebuilds the backup goes stale: newly stranded points stay
/// invisible until the next rebuild, and backup hits whose label is deleted
/// in main (or whose vector changed) are dropped at query time.
class DualIndex {
public:
    DualIndex(const IndexParams& params, std::size_t dim, std::size_t capacity,
              std::size_t tau = kDefaultRebuildThreshold);
    DualIndex(LayeredGraph main, std::size_t tau = kDefaultRebuildThreshold);

    Index& main() noexcept { return main_; }
    const Index& main() const noexcept { return main_; }

    /// Recomputes U on main and swaps in a fresh backup built over it.
    /// Resets the operation counter. Readers see the old or the new backup.
    RebuildEvent build_backup();

    /// Counts one replaced update; rebuilds when the counter exceeds tau.
    bool record_update();

    SearchResult dual_search(std::span<const float> query, std::size_t k, std::size_t ef) const;
    DualSearchTrace dual_search_trace(std::span<const float> query, std::size_t k,
                                      std::size_t ef) const;

    /// Live labels of main that dual_search with k = ef = live count misses.
    std::vector<Label> unreachable_by_dual_search() const;

    std::shared_ptr<const LayeredGraph> backup() const;
    std::size_t backup_size() const;
    std::vector<Label> backup_labels() const;

    std::size_t tau() const noexcept { return tau_; }
    std::size_t ops_since_rebuild() const noexcept { return ops_since_rebuild_; }
    std::size_t rebuild_count() const noexcept { return rebuilds_; }

private:
    Index main_;
    mutable std::mutex backup_mu_;
    std::shared_ptr<const LayeredGraph> backup_;
    std::size_t tau_;
    std::size_t ops_since_rebuild_ = 0;
    std::size_t rebuilds_ = 0;
};

}  // namespace hnswru
