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

#include <iosfwd>
#include <vector>

#include "hnswru/layered_graph.hpp"

namespace hnswru {

/// Two notions of "cannot be found": zero in-degree across every layer, and
/// absent from an exhaustive search. Label lists are sorted ascending.
struct ReachabilityReport {
    std::vector<Label> indegree_zero;
    std::vector<Label> search_unreachable;
    std::size_t live_count = 0;
};

/// Live labels whose in-degree summed over all layers is zero, entry point
/// excluded. Out-edges of deleted slots count, since those slots still route.
std::vector<Label> count_indegree_zero(const LayeredGraph& graph);

/// Live labels missing from knn_search(k = ef = live count) probed with the
/// entry point's own vector. Empty for an empty graph.
std::vector<Label> unreachable_by_search(const LayeredGraph& graph);

/// Live labels reached by a directed traversal from the entry point over the
/// union of all layers' edges, routing through deleted slots.
std::vector<Label> traversal_reachable(const LayeredGraph& graph);

/// Live labels not reached by traversal_reachable.
std::vector<Label> traversal_unreachable(const LayeredGraph& graph);

std::vector<Label> live_labels(const LayeredGraph& graph);

ReachabilityReport reachability_report(const LayeredGraph& graph);

/// CSV row: iteration,indegree_zero_count,search_unreachable_count,live_count
void write_reachability_header(std::ostream& out);
void write_reachability_row(std::ostream& out, std::size_t iteration, const ReachabilityReport& report);

}  // namespace hnswru
