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

// hnswru_bench: build indexes, replay update scenarios, audit reachability,
// compute ground truth and sweep search parameters.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hnswru/bench/ground_truth.hpp"
#include "hnswru/bench/scenario.hpp"
#include "hnswru/bench/synthetic.hpp"
#include "hnswru/snapshot.hpp"

namespace {

using namespace hnswru;
using namespace hnswru::bench;

struct DataOptions {
    std::string dataset;
    std::string queries;
    std::vector<std::size_t> synthetic;  // n, dim
    std::string synthetic_kind = "gaussian";
    std::uint64_t data_seed = 1;
    std::size_t synthetic_queries = 0;
};

struct BuildOptions {
    std::size_t M = 16;
    std::size_t M_max0 = 0;
    std::size_t efc = 200;
    std::string metric = "l2";
    std::uint64_t seed = 100;

    IndexParams params() const {
        IndexParams p;
        p.M = M;
        p.M_max0 = M_max0;
        p.ef_construction = efc;
        p.metric = metric_from_string(metric);
        p.rng_seed = seed;
        return p.resolved();
    }
};

void add_data_options(CLI::App* cmd, DataOptions& d, bool with_queries) {
    cmd->add_option("--dataset", d.dataset, "Base vectors (.fvecs)");
    cmd->add_option("--synthetic", d.synthetic, "Generate N,D synthetic base vectors instead")
        ->expected(2)
        ->delimiter(',');
    cmd->add_option("--synthetic-kind", d.synthetic_kind, "gaussian | uniform | clustered")
        ->check(CLI::IsMember({"gaussian", "uniform", "clustered"}));
    cmd->add_option("--data-seed", d.data_seed, "Seed of the synthetic generator");
    if (with_queries) {
        cmd->add_option("--queries", d.queries, "Query vectors (.fvecs)");
        cmd->add_option("--synthetic-queries", d.synthetic_queries,
                        "Generate this many synthetic queries");
    }
}

void add_build_options(CLI::App* cmd, BuildOptions& b) {
    cmd->add_option("--M", b.M, "Max degree above layer 0");
    cmd->add_option("--M0", b.M_max0, "Max degree at layer 0 (0 = 2M)");
    cmd->add_option("--efc", b.efc, "Build beam width");
    cmd->add_option("--metric", b.metric, "l2 | ip | cosine")
        ->check(CLI::IsMember({"l2", "ip", "cosine"}));
    cmd->add_option("--seed", b.seed, "Index RNG seed");
}

FloatVectors generate(const std::string& kind, std::size_t n, std::size_t dim, std::uint64_t seed) {
    if (kind == "uniform") return make_uniform(n, dim, seed);
    if (kind == "clustered") return make_clustered(n, dim, 64, 0.3f, seed);
    return make_gaussian(n, dim, seed);
}

/// `query_dim` sizes synthetic queries when no base vectors are given.
Dataset load_data(const DataOptions& d, bool need_base = true, std::size_t query_dim = 0) {
    Dataset data;
    if (!d.synthetic.empty()) {
        if (!d.dataset.empty()) throw CLI::ValidationError("--dataset and --synthetic are exclusive");
        data.base = generate(d.synthetic_kind, d.synthetic[0], d.synthetic[1], d.data_seed);
    } else if (!d.dataset.empty()) {
        data.base = load_fvecs(d.dataset);
    } else if (need_base) {
        throw CLI::ValidationError("one of --dataset or --synthetic is required");
    }
    if (!d.queries.empty()) {
        data.queries = load_fvecs(d.queries);
    } else if (d.synthetic_queries > 0) {
        const std::size_t dim = data.base.dim != 0 ? data.base.dim : query_dim;
        if (dim == 0) throw CLI::ValidationError("--synthetic-queries needs base vectors");
        data.queries = generate(d.synthetic_kind, d.synthetic_queries, dim,
                                d.data_seed + 0x5eed);
    }
    return data;
}

LayeredGraph build_graph(const FloatVectors& base, const IndexParams& params) {
    LayeredGraph g(params, base.dim, base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        insert(g, {base.row(i), base.dim}, static_cast<Label>(i));
    }
    return g;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kInput, "cannot open '" + path + "' for writing");
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic HNSW index: update strategies, reachability audits and benchmarks"};
    app.require_subcommand(1);

    // build
    DataOptions build_data;
    BuildOptions build_opts;
    std::string build_out;
    auto* build_cmd = app.add_subcommand("build", "Build an index and save a snapshot");
    add_data_options(build_cmd, build_data, false);
    add_build_options(build_cmd, build_opts);
    build_cmd->add_option("--out", build_out, "Snapshot path")->required();

    // run-scenario
    DataOptions run_data;
    BuildOptions run_build;
    ScenarioConfig cfg;
    std::string run_scenario_name = "full_coverage";
    std::string run_strategy = "mn-ru-gamma";
    std::string run_out;
    auto* run_cmd = app.add_subcommand("run-scenario", "Replay an update scenario, emit metrics CSV");
    add_data_options(run_cmd, run_data, true);
    add_build_options(run_cmd, run_build);
    run_cmd->add_option("--scenario", run_scenario_name, "full_coverage | random | new_data")
        ->check(CLI::IsMember({"full_coverage", "random", "new_data"}));
    run_cmd->add_option("--strategy", run_strategy,
                        "hnsw-ru | mn-ru-alpha | mn-ru-beta | mn-ru-gamma | mn-thn-ru")
        ->check(CLI::IsMember({"hnsw-ru", "mn-ru-alpha", "mn-ru-beta", "mn-ru-gamma", "mn-thn-ru"}));
    run_cmd->add_option("--iterations", cfg.iterations, "Iterations");
    run_cmd->add_option("--batch", cfg.batch_size, "Points deleted and reinserted per iteration");
    run_cmd->add_option("--initial", cfg.initial_size, "new_data: initial index size (0 = half)");
    run_cmd->add_option("--ef", cfg.ef, "Search beam width at recall checkpoints");
    run_cmd->add_option("--k", cfg.k, "k at recall checkpoints");
    run_cmd->add_option("--recall-stride", cfg.recall_stride, "Iterations between recall checkpoints");
    run_cmd->add_option("--audit-stride", cfg.search_audit_stride,
                        "Iterations between exhaustive-search audits (0 = off)");
    run_cmd->add_flag("--dual-index", cfg.dual_index_enabled, "Maintain a backup index");
    run_cmd->add_option("--tau", cfg.tau, "Replaced updates between backup rebuilds");
    run_cmd->add_option("--sample-seed", cfg.rng_seed, "Seed of the random-scenario sampler");
    run_cmd->add_flag("--exclude-unreachable", cfg.exclude_unreachable,
                      "random: never sample labels with zero in-degree");
    run_cmd->add_option("--workers", cfg.workers, "Reinsertion threads");
    run_cmd->add_option("--out", run_out, "CSV path (default stdout)");

    // audit
    DataOptions audit_data;
    BuildOptions audit_build;
    std::string audit_index;
    auto* audit_cmd = app.add_subcommand("audit", "Print structural and reachability findings");
    add_data_options(audit_cmd, audit_data, false);
    add_build_options(audit_cmd, audit_build);
    audit_cmd->add_option("--index", audit_index, "Snapshot to audit (else build from the data)");

    // gt
    DataOptions gt_data;
    std::size_t gt_k = 10;
    std::string gt_metric = "l2";
    std::string gt_out;
    auto* gt_cmd = app.add_subcommand("gt", "Brute-force ground truth as .ivecs");
    add_data_options(gt_cmd, gt_data, true);
    gt_cmd->add_option("--k", gt_k, "Neighbors per query");
    gt_cmd->add_option("--metric", gt_metric, "l2 | ip | cosine")
        ->check(CLI::IsMember({"l2", "ip", "cosine"}));
    gt_cmd->add_option("--out", gt_out, "Output .ivecs")->required();

    // search-eval
    DataOptions eval_data;
    BuildOptions eval_build;
    std::string eval_index;
    std::string eval_gt;
    std::vector<std::size_t> eval_ef{10, 20, 40, 80, 160, 320};
    std::size_t eval_k = 1;
    std::string eval_out;
    auto* eval_cmd = app.add_subcommand("search-eval", "Recall and latency over an ef sweep");
    add_data_options(eval_cmd, eval_data, true);
    add_build_options(eval_cmd, eval_build);
    eval_cmd->add_option("--index", eval_index, "Snapshot to search (else build from the data)");
    eval_cmd->add_option("--gt", eval_gt, "Ground truth .ivecs (else brute force)");
    eval_cmd->add_option("--ef", eval_ef, "Beam widths to sweep")->delimiter(',');
    eval_cmd->add_option("--k", eval_k, "k");
    eval_cmd->add_option("--out", eval_out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*build_cmd) {
            auto data = load_data(build_data);
            auto t0 = std::chrono::steady_clock::now();
            auto g = build_graph(data.base, build_opts.params());
            save_snapshot_file(g, build_out);
            std::fprintf(stderr, "built %zu points in %.2fs -> %s\n", g.live_count(),
                         seconds_since(t0), build_out.c_str());
        } else if (*run_cmd) {
            auto data = load_data(run_data);
            cfg.kind = scenario_from_string(run_scenario_name);
            cfg.strategy = UpdateStrategy::parse(run_strategy);
            cfg.params = run_build.params();
            ScenarioObserver observer;
            observer.on_rebuild = [](std::size_t it, const RebuildEvent& ev) {
                std::fprintf(stderr, "iteration %zu: backup rebuild #%zu over %zu points\n", it,
                             ev.rebuild_number, ev.unreachable);
            };
            auto records = run_scenario(cfg, data, observer);
            if (run_out.empty()) {
                write_metrics_csv(std::cout, records);
            } else {
                auto out = open_out(run_out);
                write_metrics_csv(out, records);
            }
        } else if (*audit_cmd) {
            LayeredGraph g = audit_index.empty()
                                 ? build_graph(load_data(audit_data).base, audit_build.params())
                                 : load_snapshot_file(audit_index);
            auto structure = audit_structure(g);
            auto report = reachability_report(g);
            std::printf("live_count %zu\n", report.live_count);
            std::printf("deleted_count %zu\n", g.deleted_count());
            std::printf("indegree_zero_count %zu\n", report.indegree_zero.size());
            std::printf("search_unreachable_count %zu\n", report.search_unreachable.size());
            std::printf("traversal_unreachable_count %zu\n", traversal_unreachable(g).size());
            std::printf("structure %s\n", structure.summary().c_str());
        } else if (*gt_cmd) {
            auto data = load_data(gt_data);
            if (data.queries.size() == 0) throw CLI::ValidationError("gt needs queries");
            auto gt = brute_force_gt(data.base, data.queries, gt_k, metric_from_string(gt_metric));
            save_ivecs(gt_out, to_ivecs(gt));
        } else if (*eval_cmd) {
            std::optional<LayeredGraph> loaded;
            if (!eval_index.empty()) loaded = load_snapshot_file(eval_index);
            auto data = load_data(eval_data, !loaded, loaded ? loaded->dim() : 0);
            LayeredGraph g = loaded ? std::move(*loaded) : build_graph(data.base, eval_build.params());
            // without explicit queries the indexed points themselves are the query set
            if (data.queries.size() == 0) {
                if (data.base.size() == 0) throw CLI::ValidationError("search-eval needs queries");
                data.queries = data.base;
            }
            LabelLists gt;
            if (!eval_gt.empty()) {
                auto raw = load_ivecs(eval_gt);
                if (raw.size() != data.queries.size() || raw.dim < eval_k) {
                    throw Error(ErrorCode::kInput, "ground truth does not match the queries or k");
                }
                gt.resize(raw.size());
                for (std::size_t q = 0; q < raw.size(); ++q) {
                    gt[q].assign(raw.row(q), raw.row(q) + raw.dim);
                }
            } else {
                gt = brute_force_gt(g, data.queries, eval_k);
            }
            std::ofstream file;
            std::ostream* out = &std::cout;
            if (!eval_out.empty()) {
                file = open_out(eval_out);
                out = &file;
            }
            *out << "ef,k,recall_at_k,mean_query_us,qps\n";
            for (std::size_t ef : eval_ef) {
                double recall = 0.0;
                auto t0 = std::chrono::steady_clock::now();
                for (std::size_t q = 0; q < data.queries.size(); ++q) {
                    auto res = knn_search(g, {data.queries.row(q), data.queries.dim}, eval_k,
                                          std::max(ef, eval_k));
                    recall += recall_at_k(res, gt[q], eval_k);
                }
                const double secs = seconds_since(t0);
                const double n = static_cast<double>(data.queries.size());
                *out << ef << ',' << eval_k << ',' << recall / n << ',' << 1e6 * secs / n << ','
                     << n / secs << '\n';
            }
        }
    } catch (const CLI::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
