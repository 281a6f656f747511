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

#include "hnswru/dual_index.hpp"

#include <algorithm>
#include <unordered_map>

namespace hnswru {

namespace {

void check_tau(std::size_t tau) {
    if (tau == 0) {
        throw Error(ErrorCode::kParameter, "rebuild threshold tau must be >= 1");
    }
}

}  // namespace

DualIndex::DualIndex(const IndexParams& params, std::size_t dim, std::size_t capacity,
                     std::size_t tau)
    : main_(params, dim, capacity), tau_(tau) {
    check_tau(tau);
}

DualIndex::DualIndex(LayeredGraph main, std::size_t tau) : main_(std::move(main)), tau_(tau) {
    check_tau(tau);
}

RebuildEvent DualIndex::build_backup() {
    std::shared_ptr<const LayeredGraph> fresh = main_.read([](const LayeredGraph& g) {
        auto unreachable = unreachable_by_search(g);
        auto backup = std::make_shared<LayeredGraph>(g.params(), g.dim(),
                                                     std::max<std::size_t>(unreachable.size(), 1));
        for (Label label : unreachable) {
            insert(*backup, g.vector(*g.find(label)), label);
        }
        return backup;
    });
    RebuildEvent event{++rebuilds_, fresh->slot_count()};
    {
        std::lock_guard lock(backup_mu_);
        backup_ = std::move(fresh);
    }
    ops_since_rebuild_ = 0;
    return event;
}

bool DualIndex::record_update() {
    if (++ops_since_rebuild_ > tau_) {
        build_backup();
        return true;
    }
    return false;
}

std::shared_ptr<const LayeredGraph> DualIndex::backup() const {
    std::lock_guard lock(backup_mu_);
    return backup_;
}

std::size_t DualIndex::backup_size() const {
    auto b = backup();
    return b ? b->slot_count() : 0;
}

std::vector<Label> DualIndex::backup_labels() const {
    auto b = backup();
    return b ? live_labels(*b) : std::vector<Label>{};
}

DualSearchTrace DualIndex::dual_search_trace(std::span<const float> query, std::size_t k,
                                             std::size_t ef) const {
    DualSearchTrace trace;
    auto backup = this->backup();
    main_.read([&](const LayeredGraph& g) {
        trace.main = knn_search(g, query, k, ef);
        if (!backup || backup->live_count() == 0) return;
        auto raw = knn_search(*backup, query, k, ef);
        for (const auto& e : raw.entries) {
            auto slot = g.find(e.label);
            if (!slot) continue;
            auto bslot = backup->find(e.label);
            auto now = g.vector(*slot);
            auto then = backup->vector(*bslot);
            if (!std::equal(now.begin(), now.end(), then.begin())) continue;
            trace.backup.entries.push_back(e);
        }
    });

    std::unordered_map<Label, float> best;
    for (const auto* part : {&trace.main, &trace.backup}) {
        for (const auto& e : part->entries) {
            auto [it, inserted] = best.emplace(e.label, e.distance);
            if (!inserted) it->second = std::min(it->second, e.distance);
        }
    }
    trace.pool.reserve(best.size());
    for (const auto& [label, d] : best) trace.pool.push_back({label, d});
    std::sort(trace.pool.begin(), trace.pool.end(), [](const Neighbor& a, const Neighbor& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.label < b.label;
    });
    const auto n = std::min(k, trace.pool.size());
    trace.result.entries.assign(trace.pool.begin(), trace.pool.begin() + static_cast<std::ptrdiff_t>(n));
    return trace;
}

SearchResult DualIndex::dual_search(std::span<const float> query, std::size_t k,
                                    std::size_t ef) const {
    return dual_search_trace(query, k, ef).result;
}

std::vector<Label> DualIndex::unreachable_by_dual_search() const {
    auto [probe, live, all] = main_.read([](const LayeredGraph& g) {
        std::vector<float> q;
        if (auto e = g.entry_point()) q.assign(g.vector(*e).begin(), g.vector(*e).end());
        return std::tuple{q, g.live_count(), live_labels(g)};
    });
    if (live == 0) return {};
    auto found = dual_search(probe, live, live);
    std::vector<Label> hit;
    for (const auto& e : found.entries) hit.push_back(e.label);
    std::sort(hit.begin(), hit.end());
    std::vector<Label> out;
    std::set_difference(all.begin(), all.end(), hit.begin(), hit.end(), std::back_inserter(out));
    return out;
}

}  // namespace hnswru
