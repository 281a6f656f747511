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

#include <sstream>

#include "hnswru/snapshot.hpp"
#include "hnswru/update.hpp"
#include "test_support.hpp"

namespace hnswru {
namespace {

LayeredGraph churned() {
    auto data = bench::make_gaussian(900, 6, 21);
    LayeredGraph g(testing::params(6, 30, 3), 6, 600);
    for (std::size_t i = 0; i < 600; ++i) insert(g, {data.row(i), 6}, i);
    for (std::size_t i = 0; i < 150; ++i) mark_delete(g, 4 * i);
    for (std::size_t i = 0; i < 100; ++i) {
        replace_update(g, {data.row(600 + i), 6}, 600 + i, UpdateStrategy::of(StrategyKind::kMnThnRu));
    }
    return g;
}

std::string bytes_of(const LayeredGraph& g) {
    std::ostringstream out;
    save_snapshot(g, out);
    return out.str();
}

void expect_format_error(const std::string& bytes) {
    std::istringstream in(bytes);
    try {
        load_snapshot(in);
        FAIL() << "loaded a corrupt snapshot";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kFormat) << e.what();
    }
}

TEST(SnapshotTest, RoundTripAfterChurn) {
    auto g = churned();
    std::istringstream in(bytes_of(g));
    auto back = load_snapshot(in);
    EXPECT_TRUE(g == back);
    EXPECT_EQ(back.deleted_list().size(), 50u);
    EXPECT_EQ(bytes_of(back), bytes_of(g));
}

TEST(SnapshotTest, LaterOperationsReplayIdentically) {
    auto g = churned();
    std::istringstream in(bytes_of(g));
    auto back = load_snapshot(in);
    auto extra = bench::make_gaussian(40, 6, 22);
    for (std::size_t i = 0; i < 20; ++i) {
        mark_delete(g, 601 + i);
        mark_delete(back, 601 + i);
    }
    for (std::size_t i = 0; i < 40; ++i) {
        replace_update(g, {extra.row(i), 6}, 5000 + i, UpdateStrategy::of(StrategyKind::kHnswRu));
        replace_update(back, {extra.row(i), 6}, 5000 + i, UpdateStrategy::of(StrategyKind::kHnswRu));
    }
    EXPECT_TRUE(g == back);
}

TEST(SnapshotTest, EmptyIndexRoundTrips) {
    LayeredGraph g(testing::params(), 3, 5);
    std::istringstream in(bytes_of(g));
    EXPECT_TRUE(load_snapshot(in) == g);
}

TEST(SnapshotTest, CorruptInputsRaiseFormatErrors) {
    const auto good = bytes_of(churned());

    auto bad_magic = good;
    bad_magic[0] = 'X';
    expect_format_error(bad_magic);

    auto bad_version = good;
    bad_version[8] = 9;
    expect_format_error(bad_version);

    expect_format_error(good.substr(0, good.size() / 2));
    expect_format_error(good.substr(0, good.size() - 1));
    expect_format_error("");

    // last field is the slot of the highest label
    auto bad_slot = good;
    for (std::size_t i = 1; i <= 4; ++i) bad_slot[bad_slot.size() - i] = '\xff';
    expect_format_error(bad_slot);
}

TEST(SnapshotTest, MissingFile) {
    try {
        load_snapshot_file("/nonexistent/dir/index.bin");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kInput);
    }
}

}  // namespace
}  // namespace hnswru
