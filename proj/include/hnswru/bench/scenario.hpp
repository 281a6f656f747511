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

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hnswru/bench/vecs_io.hpp"
#include "hnswru/dual_index.hpp"

namespace hnswru::bench {

enum class ScenarioKind {
    kFullCoverage,  // the dataset is cut into `iterations` equal segments; each is deleted and reinserted
    kRandom,        // `batch_size` live labels sampled per iteration, deleted and reinserted
    kNewData,       // old-half labels deleted, new-half points inserted in their place
};

std::string_view to_string(ScenarioKind kind);
ScenarioKind scenario_from_string(std::string_view name);

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::kFullCoverage;
    std::size_t iterations = 10;
    std::size_t batch_size = 1000;
    std::string dataset_path;
    std::string query_path;

    IndexParams params;
    UpdateStrategy strategy = UpdateStrategy::of(StrategyKind::kMnRuGamma);

    bool dual_index_enabled = false;
    std::size_t tau = kDefaultRebuildThreshold;

    /// Seed of the label sampler; the index itself uses params.rng_seed.
    std::uint64_t rng_seed = 7;
    /// Random scenario only: never sample labels that currently have zero in-degree.
    bool exclude_unreachable = false;
    /// new_data: points initially indexed. Zero means half the dataset.
    std::size_t initial_size = 0;

    /// Iterations between recall checkpoints; zero disables them.
    std::size_t recall_stride = 0;
    std::size_t k = 10;
    std::size_t ef = 100;
    /// Iterations between exhaustive-search audits; zero disables them.
    std::size_t search_audit_stride = 1;
    /// Threads replaying the reinsertion phase. Results are reproducible only with 1.
    std::size_t workers = 1;
};

struct MetricsRecord {
    std::size_t iteration = 0;
    double update_wall_time_s = 0.0;
    std::size_t indegree_zero_count = 0;
    std::optional<std::size_t> search_unreachable_count;
    std::size_t live_count = 0;
    std::optional<double> recall_at_k;
    std::size_t ef = 0;
    std::size_t k = 0;
    bool backup_rebuilt = false;
    std::size_t backup_size = 0;
    std::optional<std::size_t> dual_unfindable_count;
    /// Delete and replace operations in the timed phase.
    std::size_t operations = 0;
};

struct Dataset {
    FloatVectors base;
    FloatVectors queries;
};

/// Hooks invoked between timed phases.
struct ScenarioObserver {
    /// After the index is built, before the first iteration.
    std::function<void(const DualIndex&)> on_built;
    /// After each iteration's metrics are collected.
    std::function<void(const DualIndex&, const MetricsRecord&)> on_iteration;
    std::function<void(std::size_t iteration, const RebuildEvent&)> on_rebuild;
};

/// Throws Error(kConfig) when `cfg` does not fit `data`.
void validate(const ScenarioConfig& cfg, const Dataset& data);

/// Loads base and query vectors named by the config.
Dataset load_dataset(const ScenarioConfig& cfg);

/// Builds an index over the initial points and replays the scenario.
std::vector<MetricsRecord> run_scenario(const ScenarioConfig& cfg, const Dataset& data,
                                        const ScenarioObserver& observer = {});

/// Header: iteration,update_wall_time_s,indegree_zero_count,
/// search_unreachable_count,live_count,recall_at_k,ef,k,backup_rebuilt,
/// backup_size,dual_unfindable_count. Unmeasured cells are left empty.
void write_metrics_csv(std::ostream& out, const std::vector<MetricsRecord>& records);
inline constexpr std::size_t kWallTimeColumn = 1;

}  // namespace hnswru::bench
