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
#include <string>

#include "hnswru/layered_graph.hpp"

namespace hnswru {

/// Binary index snapshot, version 1. All integers little-endian, floats
/// IEEE-754 binary32/binary64 little-endian.
///
///   magic            8 bytes  "HNSWRUIX"
///   version          u32      1
///   M, M_max0, ef_construction          u64 x3
///   metric           u8       0 = l2, 1 = ip, 2 = cosine
///   level_lambda     f64
///   rng_seed         u64
///   dim, capacity, slot_count           u64 x3
///   entry_point      u32      0xFFFFFFFF when absent
///   max_layer        i32      -1 when empty
///   rng_state        u32 length + that many bytes (textual engine state)
///   slot_count nodes:
///     label u64, level i32, deleted u8, dim x f32,
///     then for each layer 0..level: count u32, count x u32 neighbor slots
///   deleted_list     u64 length + u32 slots, oldest first
///   label_index      u64 length + (label u64, slot u32) pairs, ascending label
///
/// Loading a snapshot yields a graph equal to the saved one, RNG included,
/// so later operations replay identically.
void save_snapshot(const LayeredGraph& graph, std::ostream& out);
/// Throws Error(kFormat) on a bad magic, unknown version, truncation or an
/// out-of-range slot reference.
LayeredGraph load_snapshot(std::istream& in);

void save_snapshot_file(const LayeredGraph& graph, const std::string& path);
LayeredGraph load_snapshot_file(const std::string& path);

}  // namespace hnswru
