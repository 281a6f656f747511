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

#include "hnswru/reachability.hpp"

#include <algorithm>
#include <ostream>

#include "hnswru/search.hpp"

namespace hnswru {

std::vector<Label> live_labels(const LayeredGraph& g) {
    std::vector<Label> out;
    out.reserve(g.live_count());
    for (SlotId s = 0; s < g.slot_count(); ++s) {
        if (!g.is_deleted(s)) out.push_back(g.label(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Label> count_indegree_zero(const LayeredGraph& g) {
    const auto n = static_cast<SlotId>(g.slot_count());
    std::vector<std::uint32_t> indegree(n, 0);
    for (SlotId s = 0; s < n; ++s) {
        for (int layer = 0; layer <= g.level(s); ++layer) {
            for (SlotId nb : g.neighbors(s, layer)) ++indegree[nb];
        }
    }
    const auto entry = g.entry_point();
    std::vector<Label> out;
    for (SlotId s = 0; s < n; ++s) {
        if (indegree[s] == 0 && !g.is_deleted(s) && (!entry || *entry != s)) {
            out.push_back(g.label(s));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Label> unreachable_by_search(const LayeredGraph& g) {
    const auto entry = g.entry_point();
    const std::size_t live = g.live_count();
    if (!entry || live == 0) return {};

    auto found = knn_search(g, g.vector(*entry), live, live);
    std::vector<Label> hit;
    hit.reserve(found.size());
    for (const auto& e : found.entries) hit.push_back(e.label);
    std::sort(hit.begin(), hit.end());

    std::vector<Label> out;
    auto all = live_labels(g);
    std::set_difference(all.begin(), all.end(), hit.begin(), hit.end(), std::back_inserter(out));
    return out;
}

std::vector<Label> traversal_reachable(const LayeredGraph& g) {
    const auto entry = g.entry_point();
    if (!entry) return {};
    std::vector<std::uint8_t> seen(g.slot_count(), 0);
    std::vector<SlotId> stack{*entry};
    seen[*entry] = 1;
    std::vector<Label> out;
    while (!stack.empty()) {
        SlotId s = stack.back();
        stack.pop_back();
        if (!g.is_deleted(s)) out.push_back(g.label(s));
        for (int layer = 0; layer <= g.level(s); ++layer) {
            for (SlotId nb : g.neighbors(s, layer)) {
                if (!seen[nb]) {
                    seen[nb] = 1;
                    stack.push_back(nb);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Label> traversal_unreachable(const LayeredGraph& g) {
    auto all = live_labels(g);
    auto reached = traversal_reachable(g);
    std::vector<Label> out;
    std::set_difference(all.begin(), all.end(), reached.begin(), reached.end(),
                        std::back_inserter(out));
    return out;
}

ReachabilityReport reachability_report(const LayeredGraph& g) {
    return {count_indegree_zero(g), unreachable_by_search(g), g.live_count()};
}

void write_reachability_header(std::ostream& out) {
    out << "iteration,indegree_zero_count,search_unreachable_count,live_count\n";
}

void write_reachability_row(std::ostream& out, std::size_t iteration, const ReachabilityReport& r) {
    out << iteration << ',' << r.indegree_zero.size() << ',' << r.search_unreachable.size() << ','
        << r.live_count << '\n';
}

}  // namespace hnswru
