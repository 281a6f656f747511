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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hnswru/bench/ground_truth.hpp"
#include "hnswru/search.hpp"
#include "hnswru/update.hpp"
#include "test_support.hpp"

namespace hnswru {
namespace {

using testing::add;
using testing::build;
using testing::edge;
using testing::params;

std::vector<SlotId> slots_of(const std::vector<Candidate>& list) {
    std::vector<SlotId> out;
    for (const auto& c : list) out.push_back(c.slot);
    return out;
}

/// Points on a line at x = 0..n-1, every pair linked at layer 0.
LayeredGraph line(int n) {
    LayeredGraph g(params(), 1, static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) add(g, static_cast<Label>(i), {float(i)});
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) edge(g, SlotId(i), SlotId(j));
        }
    }
    return g;
}

TEST(SearchLayerTest, SingleNode) {
    LayeredGraph g(params(), 2, 1);
    SlotId only = add(g, 9, {3, 4});
    std::vector<float> q{100, -5};
    std::vector<SlotId> entry{only};
    auto found = search_layer(g, q, entry, 1, 0);
    ASSERT_EQ(found.size(), 1u);
    EXPECT_EQ(found[0].slot, only);
}

TEST(SearchLayerTest, LineQuery) {
    auto g = line(5);
    std::vector<float> q{2.2f};
    // brute-force order of |x - 2.2| over x = 0..4
    std::vector<SlotId> oracle{0, 1, 2, 3, 4};
    std::sort(oracle.begin(), oracle.end(), [](SlotId a, SlotId b) {
        return std::abs(float(a) - 2.2f) < std::abs(float(b) - 2.2f);
    });
    oracle.resize(3);
    ASSERT_EQ(oracle, (std::vector<SlotId>{2, 3, 1}));

    for (SlotId start = 0; start < 5; ++start) {
        std::vector<SlotId> entry{start};
        EXPECT_EQ(slots_of(search_layer(g, q, entry, 3, 0)), (std::vector<SlotId>{2, 3, 1}));
    }
}

TEST(SearchLayerTest, WideBeamReturnsWholeLayer) {
    auto g = build(bench::make_gaussian(300, 8, 2), params(6, 30));
    std::vector<float> q(8, 0.1f);
    std::vector<SlotId> entry{*g.entry_point()};
    auto found = search_layer(g, q, entry, 1000, 0);
    EXPECT_EQ(found.size(), 300u);
    EXPECT_TRUE(std::is_sorted(found.begin(), found.end(),
                               [](auto& a, auto& b) { return a.distance < b.distance; }));

    std::size_t layer1 = 0;
    for (SlotId s = 0; s < g.slot_count(); ++s) layer1 += g.level(s) >= 1;
    EXPECT_EQ(search_layer(g, q, entry, 1000, 1).size(), layer1);
}

TEST(SearchLayerTest, Errors) {
    auto g = line(3);
    std::vector<float> q{1};
    try {
        search_layer(g, q, {}, 1, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kInput);
    }
    std::vector<SlotId> entry{0};
    EXPECT_THROW(search_layer(g, q, entry, 0, 0), Error);
    EXPECT_THROW(search_layer(g, q, entry, 1, 1), Error);
}

/// Candidate list for slots of `g`, distances measured from `q`.
std::vector<Candidate> candidates(const LayeredGraph& g, const std::vector<float>& q,
                                  std::initializer_list<SlotId> slots) {
    std::vector<Candidate> out;
    for (SlotId s : slots) out.push_back({g.distance(q.data(), s), s});
    return out;
}

TEST(SelectNeighborsTest, SingleCandidate) {
    LayeredGraph g(params(), 2, 1);
    SlotId a = add(g, 0, {1, 0});
    auto kept = select_neighbors(g, candidates(g, {0, 0}, {a}), 3, 1.0f);
    EXPECT_EQ(slots_of(kept), std::vector<SlotId>{a});
    EXPECT_TRUE(select_neighbors(g, {}, 3, 1.0f).empty());
}

TEST(SelectNeighborsTest, ClassicPrune) {
    LayeredGraph g(params(), 2, 3);
    SlotId a = add(g, 0, {1, 0});
    SlotId b = add(g, 1, {1.05f, 0.05f});
    SlotId c = add(g, 2, {0, 2});
    std::vector<float> q{0, 0};
    // Euclidean: d(a,b) ~ 0.0707 <= d(q,b) ~ 1.051; d(a,c) ~ 2.236 > d(q,c) = 2
    EXPECT_NEAR(std::sqrt(g.distance(a, b)), 0.0707, 1e-3);
    EXPECT_NEAR(std::sqrt(g.distance(q.data(), b)), 1.051, 1e-3);
    auto kept = select_neighbors(g, candidates(g, q, {c, b, a}), 2, 1.0f);
    EXPECT_EQ(slots_of(kept), (std::vector<SlotId>{a, c}));
}

TEST(SelectNeighborsTest, AlphaBoundary) {
    LayeredGraph g(params(), 2, 2);
    SlotId a = add(g, 0, {1, 0});
    SlotId e = add(g, 1, {0.549f, 0.836f});
    std::vector<float> q{0, 0};
    EXPECT_NEAR(std::sqrt(g.distance(q.data(), e)), 1.0, 1e-3);
    EXPECT_NEAR(std::sqrt(g.distance(a, e)), 0.95, 1e-3);
    EXPECT_EQ(slots_of(select_neighbors(g, candidates(g, q, {a, e}), 4, 1.0f)),
              std::vector<SlotId>{a});
    EXPECT_EQ(slots_of(select_neighbors(g, candidates(g, q, {a, e}), 4, 1.1f)),
              (std::vector<SlotId>{a, e}));
}

TEST(SelectNeighborsTest, TiesBreakByLabel) {
    LayeredGraph g(params(), 2, 3);
    add(g, 7, {0, 1});
    add(g, 3, {1, 0});
    add(g, 5, {-1, 0});
    std::vector<float> q{0, 0};
    auto kept = select_neighbors(g, candidates(g, q, {0, 1, 2}), 1, 1.0f);
    ASSERT_EQ(kept.size(), 1u);
    EXPECT_EQ(g.label(kept[0].slot), 3u);
}

// Greedy alpha selection is not monotone in alpha: a point admitted only at
// the larger alpha can occlude a later candidate that the smaller alpha kept.
TEST(SelectNeighborsTest, LargerAlphaCanDropAPointKeptAtAlphaOne) {
    LayeredGraph g(params(), 2, 3);
    SlotId c0 = add(g, 0, {-0.1f, 1.7f});
    SlotId c1 = add(g, 1, {1.5f, 1.5f});
    SlotId c2 = add(g, 2, {-1.2f, 0.6f});
    std::vector<float> q{0, 0};
    auto cand = candidates(g, q, {c0, c1, c2});
    EXPECT_EQ(slots_of(select_neighbors(g, cand, 8, 1.0f)), (std::vector<SlotId>{c2, c1}));
    EXPECT_EQ(slots_of(select_neighbors(g, cand, 8, 1.1f)), (std::vector<SlotId>{c2, c0}));
}

TEST(SelectNeighborsTest, RandomizedProperties) {
    for (int trial = 0; trial < 500; ++trial) {
        std::mt19937_64 rng(trial);
        const std::size_t dim = 2 + rng() % 6, n = 1 + rng() % 40, M = 2 + rng() % 12;
        LayeredGraph g(params(M, M), dim, n);
        std::normal_distribution<float> normal;
        std::vector<float> q(dim);
        for (auto& x : q) x = normal(rng);
        std::vector<Candidate> cand;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<float> v(dim);
            for (auto& x : v) x = normal(rng);
            SlotId s = g.add_node(i, v, 0);
            cand.push_back({g.distance(q.data(), s), s});
        }
        auto closest = *std::min_element(cand.begin(), cand.end(), [](auto& a, auto& b) {
            return a.distance < b.distance;
        });
        auto k1 = select_neighbors(g, cand, M, 1.0f);
        auto k11 = select_neighbors(g, cand, M, 1.1f);
        for (const auto* kept : {&k1, &k11}) {
            ASSERT_LE(kept->size(), M);
            ASSERT_FALSE(kept->empty());
            EXPECT_EQ(kept->front().distance, closest.distance);
            for (const auto& c : *kept) {
                EXPECT_TRUE(std::any_of(cand.begin(), cand.end(),
                                        [&](auto& x) { return x.slot == c.slot; }));
            }
        }
        if (k1.size() >= M || k11.size() >= M) continue;
        // anything kept at alpha 1 but not at 1.1 is occluded at 1.1 by an
        // earlier point that alpha 1 rejected
        auto in = [](const std::vector<Candidate>& v, SlotId s) {
            return std::any_of(v.begin(), v.end(), [s](auto& c) { return c.slot == s; });
        };
        for (const auto& e : k1) {
            if (in(k11, e.slot)) continue;
            bool explained = false;
            for (const auto& s : k11) {
                if (s.distance >= e.distance || in(k1, s.slot)) continue;
                explained |= 1.21f * g.distance(s.slot, e.slot) <= e.distance;
            }
            EXPECT_TRUE(explained) << "trial " << trial;
        }
    }
}

TEST(InsertTest, FirstPointBecomesEntry) {
    LayeredGraph g(params(), 3, 10);
    std::vector<float> v{1, 2, 3};
    SlotId s = insert(g, v, 42);
    EXPECT_EQ(g.entry_point(), s);
    EXPECT_EQ(g.max_layer(), g.level(s));
    EXPECT_EQ(*g.find(42), s);
}

TEST(InsertTest, ThousandPointsAuditClean) {
    auto g = build(bench::make_gaussian(1000, 16, 21), params());
    auto report = audit_structure(g);
    EXPECT_TRUE(report.empty()) << report.summary();
}

TEST(InsertTest, Errors) {
    LayeredGraph g(params(), 2, 2);
    std::vector<float> v{0, 0};
    insert(g, v, 1);
    try {
        insert(g, v, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kConflict);
    }
    insert(g, v, 2);
    try {
        insert(g, v, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kCapacity);
    }
}

TEST(KnnSearchTest, ExhaustiveReturnsAllSorted) {
    auto data = bench::make_gaussian(60, 5, 8);
    auto g = build(data, params(4, 20));
    std::vector<float> q(5, 0.0f);
    auto res = knn_search(g, q, 100, 100);
    ASSERT_EQ(res.size(), 60u);
    auto gt = bench::brute_force_gt(data, bench::FloatVectors{5, q}, 60, Metric::kL2);
    for (std::size_t i = 0; i < 60; ++i) EXPECT_EQ(res.entries[i].label, gt[0][i]);
}

TEST(KnnSearchTest, SelfMatch) {
    auto data = bench::make_gaussian(500, 8, 8);
    auto g = build(data, params());
    for (std::size_t i = 0; i < 500; i += 37) {
        auto res = knn_search(g, {data.row(i), 8}, 1, 10);
        ASSERT_EQ(res.size(), 1u);
        EXPECT_EQ(res.entries[0].label, i);
        EXPECT_EQ(res.entries[0].distance, 0.0f);
    }
}

TEST(KnnSearchTest, RecallOnTenThousandPoints) {
    auto data = bench::make_gaussian(10000, 32, 5);
    auto queries = bench::make_gaussian(100, 32, 6);
    auto g = build(data, params());
    auto gt = bench::brute_force_gt(data, queries, 10, Metric::kL2);
    double recall = 0.0;
    for (std::size_t q = 0; q < 100; ++q) {
        recall += bench::recall_at_k(knn_search(g, {queries.row(q), 32}, 10, 100), gt[q], 10);
    }
    EXPECT_GE(recall / 100.0, 0.90);
}

TEST(KnnSearchTest, ExcludesDeletedLabels) {
    auto data = bench::make_gaussian(300, 8, 8);
    auto g = build(data, params(8, 40));
    for (Label l = 0; l < 300; l += 3) mark_delete(g, l);
    for (std::size_t i = 0; i < 300; i += 7) {
        auto res = knn_search(g, {data.row(i), 8}, 20, 300);
        for (const auto& n : res.entries) EXPECT_NE(n.label % 3, 0u);
    }
}

TEST(KnnSearchTest, ExactWhenBeamCoversConnectedIndex) {
    auto data = bench::make_gaussian(400, 6, 14);
    auto queries = bench::make_gaussian(30, 6, 15);
    auto g = build(data, params(6, 30));
    auto gt = bench::brute_force_gt(data, queries, 10, Metric::kL2);
    for (std::size_t q = 0; q < 30; ++q) {
        EXPECT_EQ(bench::recall_at_k(knn_search(g, {queries.row(q), 6}, 10, 400), gt[q], 10), 1.0);
    }
}

TEST(KnnSearchTest, Errors) {
    LayeredGraph g(params(), 2, 4);
    std::vector<float> q{0, 0};
    try {
        knn_search(g, q, 1, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kEmptyIndex);
    }
    insert(g, q, 0);
    try {
        knn_search(g, q, 5, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kParameter);
    }
    mark_delete(g, 0);
    EXPECT_TRUE(knn_search(g, q, 1, 1).empty());
}

}  // namespace
}  // namespace hnswru
