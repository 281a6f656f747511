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

#include "hnswru/bench/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include "hnswru/bench/ground_truth.hpp"

namespace hnswru::bench {

std::string_view to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::kFullCoverage:
            return "full_coverage";
        case ScenarioKind::kRandom:
            return "random";
        case ScenarioKind::kNewData:
            return "new_data";
    }
    return "unknown";
}

ScenarioKind scenario_from_string(std::string_view name) {
    for (auto kind : {ScenarioKind::kFullCoverage, ScenarioKind::kRandom, ScenarioKind::kNewData}) {
        if (to_string(kind) == name) return kind;
    }
    throw Error(ErrorCode::kConfig, "unknown scenario '" + std::string(name) + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

std::size_t initial_size(const ScenarioConfig& cfg, const Dataset& data) {
    if (cfg.kind != ScenarioKind::kNewData) return data.base.size();
    return cfg.initial_size != 0 ? cfg.initial_size : data.base.size() / 2;
}

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::kConfig, what); }

/// Labels a random iteration touches, without replacement.
std::vector<Label> sample_labels(std::size_t universe, std::size_t count,
                                 const std::vector<Label>& excluded, std::mt19937_64& rng) {
    std::vector<Label> pool;
    pool.reserve(universe);
    for (Label l = 0; l < universe; ++l) {
        if (!std::binary_search(excluded.begin(), excluded.end(), l)) pool.push_back(l);
    }
    if (pool.size() < count) {
        throw Error(ErrorCode::kConfig, "not enough eligible labels to sample a batch");
    }
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(count);
    return pool;
}

}  // namespace

void validate(const ScenarioConfig& cfg, const Dataset& data) {
    const std::size_t n = data.base.size();
    if (n == 0) config_error("dataset is empty");
    if (cfg.iterations == 0 || cfg.batch_size == 0) {
        config_error("iterations and batch size must be positive");
    }
    if (cfg.tau == 0) config_error("tau must be positive");
    if (cfg.workers == 0) config_error("workers must be positive");
    switch (cfg.kind) {
        case ScenarioKind::kFullCoverage:
            if (cfg.iterations * cfg.batch_size != n) {
                config_error("full_coverage needs iterations x batch == dataset size (" +
                             std::to_string(cfg.iterations) + " x " +
                             std::to_string(cfg.batch_size) + " != " + std::to_string(n) + ")");
            }
            break;
        case ScenarioKind::kRandom:
            if (cfg.batch_size > n) config_error("batch larger than the dataset");
            break;
        case ScenarioKind::kNewData: {
            const std::size_t initial = initial_size(cfg, data);
            if (initial == 0 || n < 2 * initial) {
                config_error("new_data needs a dataset of at least twice the initial index size");
            }
            if (cfg.iterations * cfg.batch_size > initial) {
                config_error("new_data would delete more points than were indexed");
            }
            break;
        }
    }
    if (cfg.recall_stride > 0) {
        if (data.queries.size() == 0) config_error("recall checkpoints need queries");
        if (data.queries.dim != data.base.dim) config_error("query and base dimensions differ");
        if (cfg.k == 0 || cfg.ef < cfg.k) config_error("recall needs 1 <= k <= ef");
    }
    (void)cfg.params.resolved();
}

Dataset load_dataset(const ScenarioConfig& cfg) {
    if (cfg.dataset_path.empty()) config_error("no dataset path");
    Dataset data;
    data.base = load_fvecs(cfg.dataset_path);
    if (!cfg.query_path.empty()) data.queries = load_fvecs(cfg.query_path);
    return data;
}

std::vector<MetricsRecord> run_scenario(const ScenarioConfig& cfg, const Dataset& data,
                                        const ScenarioObserver& observer) {
    validate(cfg, data);
    const auto& base = data.base;
    const std::size_t initial = initial_size(cfg, data);

    DualIndex dual(cfg.params, base.dim, initial, cfg.tau);
    Index& index = dual.main();
    for (std::size_t i = 0; i < initial; ++i) {
        index.insert({base.row(i), base.dim}, static_cast<Label>(i));
    }
    if (observer.on_built) observer.on_built(dual);

    std::mt19937_64 sampler(cfg.rng_seed);
    std::mutex record_mu;
    std::vector<MetricsRecord> records;
    records.reserve(cfg.iterations);

    for (std::size_t it = 1; it <= cfg.iterations; ++it) {
        MetricsRecord rec;
        rec.iteration = it;
        rec.k = cfg.k;
        rec.ef = cfg.ef;

        // (label to delete, label to insert, row of the inserted vector)
        struct Op {
            Label removed;
            Label added;
            std::size_t row;
        };
        std::vector<Op> ops;
        ops.reserve(cfg.batch_size);
        switch (cfg.kind) {
            case ScenarioKind::kFullCoverage:
                for (std::size_t j = 0; j < cfg.batch_size; ++j) {
                    Label l = (it - 1) * cfg.batch_size + j;
                    ops.push_back({l, l, l});
                }
                break;
            case ScenarioKind::kRandom: {
                std::vector<Label> excluded;
                if (cfg.exclude_unreachable) excluded = count_indegree_zero(index.graph());
                for (Label l : sample_labels(initial, cfg.batch_size, excluded, sampler)) {
                    ops.push_back({l, l, l});
                }
                break;
            }
            case ScenarioKind::kNewData:
                for (std::size_t j = 0; j < cfg.batch_size; ++j) {
                    Label old = (it - 1) * cfg.batch_size + j;
                    ops.push_back({old, initial + old, initial + old});
                }
                break;
        }

        double seconds = 0.0;
        auto timed = [&](auto&& fn) {
            auto t0 = Clock::now();
            fn();
            seconds += std::chrono::duration<double>(Clock::now() - t0).count();
        };
        auto after_replace = [&] {
            if (!cfg.dual_index_enabled) return;
            std::lock_guard lock(record_mu);
            if (dual.ops_since_rebuild() + 1 > dual.tau()) {
                auto event = dual.build_backup();
                rec.backup_rebuilt = true;
                if (observer.on_rebuild) observer.on_rebuild(it, event);
            } else {
                dual.record_update();
            }
        };

        timed([&] {
            for (const Op& op : ops) index.mark_delete(op.removed);
        });
        if (cfg.workers == 1) {
            for (const Op& op : ops) {
                timed([&] {
                    index.replace_update({base.row(op.row), base.dim}, op.added, cfg.strategy);
                });
                after_replace();
            }
        } else {
            auto t0 = Clock::now();
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < cfg.workers; ++w) {
                pool.emplace_back([&, w] {
                    for (std::size_t j = w; j < ops.size(); j += cfg.workers) {
                        const Op& op = ops[j];
                        index.replace_update({base.row(op.row), base.dim}, op.added, cfg.strategy);
                        after_replace();
                    }
                });
            }
            pool.clear();
            seconds += std::chrono::duration<double>(Clock::now() - t0).count();
        }
        rec.update_wall_time_s = seconds;
        rec.operations = 2 * ops.size();

        const LayeredGraph& g = index.graph();
        rec.live_count = g.live_count();
        rec.indegree_zero_count = count_indegree_zero(g).size();
        if (cfg.search_audit_stride > 0 && it % cfg.search_audit_stride == 0) {
            rec.search_unreachable_count = unreachable_by_search(g).size();
            if (cfg.dual_index_enabled) {
                rec.dual_unfindable_count = dual.unreachable_by_dual_search().size();
            }
        }
        rec.backup_size = dual.backup_size();
        if (cfg.recall_stride > 0 && it % cfg.recall_stride == 0) {
            auto gt = brute_force_gt(g, data.queries, cfg.k);
            double sum = 0.0;
            for (std::size_t q = 0; q < data.queries.size(); ++q) {
                auto res = knn_search(g, {data.queries.row(q), data.queries.dim}, cfg.k, cfg.ef);
                sum += recall_at_k(res, gt[q], cfg.k);
            }
            rec.recall_at_k = sum / static_cast<double>(data.queries.size());
        }
        records.push_back(rec);
        if (observer.on_iteration) observer.on_iteration(dual, records.back());
    }
    return records;
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRecord>& records) {
    out << "iteration,update_wall_time_s,indegree_zero_count,search_unreachable_count,live_count,"
           "recall_at_k,ef,k,backup_rebuilt,backup_size,dual_unfindable_count\n";
    for (const auto& r : records) {
        out << r.iteration << ',' << std::setprecision(9) << r.update_wall_time_s << ','
            << r.indegree_zero_count << ',';
        if (r.search_unreachable_count) out << *r.search_unreachable_count;
        out << ',' << r.live_count << ',';
        if (r.recall_at_k) out << std::fixed << std::setprecision(6) << *r.recall_at_k << std::defaultfloat;
        out << ',' << r.ef << ',' << r.k << ',' << (r.backup_rebuilt ? 1 : 0) << ',' << r.backup_size
            << ',';
        if (r.dual_unfindable_count) out << *r.dual_unfindable_count;
        out << '\n';
    }
}

}  // namespace hnswru::bench
