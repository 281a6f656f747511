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

#include "hnswru/snapshot.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "binary_io.hpp"

namespace hnswru {

namespace {

constexpr char kMagic[8] = {'H', 'N', 'S', 'W', 'R', 'U', 'I', 'X'};
constexpr std::uint32_t kVersion = 1;

using detail::get_le;
using detail::put_le;

[[noreturn]] void corrupt(const std::string& what) {
    throw Error(ErrorCode::kFormat, "corrupt snapshot: " + what);
}

}  // namespace

void save_snapshot(const LayeredGraph& g, std::ostream& out) {
    const auto& p = g.params_;
    out.write(kMagic, sizeof(kMagic));
    put_le<std::uint32_t>(out, kVersion);
    put_le<std::uint64_t>(out, p.M);
    put_le<std::uint64_t>(out, p.M_max0);
    put_le<std::uint64_t>(out, p.ef_construction);
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(p.metric));
    put_le<double>(out, p.level_lambda);
    put_le<std::uint64_t>(out, p.rng_seed);
    put_le<std::uint64_t>(out, g.dim_);
    put_le<std::uint64_t>(out, g.capacity_);
    put_le<std::uint64_t>(out, g.slot_count());
    put_le<std::uint32_t>(out, g.entry_);
    put_le<std::int32_t>(out, g.max_layer_);

    std::ostringstream rng_text;
    rng_text << g.rng_;
    const std::string rng = rng_text.str();
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(rng.size()));
    out.write(rng.data(), static_cast<std::streamsize>(rng.size()));

    for (SlotId s = 0; s < g.slot_count(); ++s) {
        put_le<std::uint64_t>(out, g.labels_[s]);
        put_le<std::int32_t>(out, g.levels_[s]);
        put_le<std::uint8_t>(out, g.deleted_[s]);
        for (float x : g.vector(s)) put_le<float>(out, x);
        for (const auto& list : g.links_[s]) {
            put_le<std::uint32_t>(out, static_cast<std::uint32_t>(list.size()));
            for (SlotId nb : list) put_le<std::uint32_t>(out, nb);
        }
    }

    put_le<std::uint64_t>(out, g.deleted_list_.size());
    for (SlotId s : g.deleted_list_) put_le<std::uint32_t>(out, s);

    std::vector<std::pair<Label, SlotId>> index(g.label_index_.begin(), g.label_index_.end());
    std::sort(index.begin(), index.end());
    put_le<std::uint64_t>(out, index.size());
    for (const auto& [label, slot] : index) {
        put_le<std::uint64_t>(out, label);
        put_le<std::uint32_t>(out, slot);
    }
    if (!out) {
        throw Error(ErrorCode::kInput, "failed writing snapshot");
    }
}

LayeredGraph load_snapshot(std::istream& in) {
    char magic[sizeof(kMagic)];
    in.read(magic, sizeof(magic));
    if (in.gcount() != sizeof(magic) || !std::equal(magic, magic + sizeof(magic), kMagic)) {
        corrupt("bad magic bytes");
    }
    auto version = get_le<std::uint32_t>(in, "version");
    if (version != kVersion) {
        corrupt("unsupported version " + std::to_string(version));
    }
    IndexParams p;
    p.M = get_le<std::uint64_t>(in, "M");
    p.M_max0 = get_le<std::uint64_t>(in, "M_max0");
    p.ef_construction = get_le<std::uint64_t>(in, "ef_construction");
    auto metric = get_le<std::uint8_t>(in, "metric");
    if (metric > 2) corrupt("unknown metric tag");
    p.metric = static_cast<Metric>(metric);
    p.level_lambda = get_le<double>(in, "level_lambda");
    p.rng_seed = get_le<std::uint64_t>(in, "rng_seed");
    auto dim = get_le<std::uint64_t>(in, "dim");
    auto capacity = get_le<std::uint64_t>(in, "capacity");
    auto count = get_le<std::uint64_t>(in, "slot_count");
    if (count > capacity) corrupt("slot count exceeds capacity");
    if (dim == 0 || dim > (1u << 20)) corrupt("implausible dimension");

    LayeredGraph g(p, dim, capacity);
    g.entry_ = get_le<std::uint32_t>(in, "entry_point");
    g.max_layer_ = get_le<std::int32_t>(in, "max_layer");

    auto rng_len = get_le<std::uint32_t>(in, "rng state length");
    if (rng_len > (1u << 20)) corrupt("implausible rng state length");
    std::string rng(rng_len, '\0');
    in.read(rng.data(), rng_len);
    if (in.gcount() != static_cast<std::streamsize>(rng_len)) corrupt("truncated rng state");
    std::istringstream rng_text(rng);
    rng_text >> g.rng_;
    if (!rng_text) corrupt("unreadable rng state");

    g.vectors_.resize(count * dim);
    g.labels_.resize(count);
    g.levels_.resize(count);
    g.deleted_.resize(count);
    g.links_.resize(count);
    for (std::uint64_t s = 0; s < count; ++s) {
        g.labels_[s] = get_le<std::uint64_t>(in, "label");
        auto level = get_le<std::int32_t>(in, "level");
        if (level < 0 || level > 64) corrupt("implausible level");
        g.levels_[s] = level;
        g.deleted_[s] = get_le<std::uint8_t>(in, "deleted flag");
        if (g.deleted_[s] > 1) corrupt("bad deleted flag");
        if (g.deleted_[s]) ++g.deleted_count_;
        for (std::uint64_t i = 0; i < dim; ++i) {
            g.vectors_[s * dim + i] = get_le<float>(in, "vector component");
        }
        g.links_[s].resize(static_cast<std::size_t>(level) + 1);
        for (auto& list : g.links_[s]) {
            auto n = get_le<std::uint32_t>(in, "neighbor count");
            if (n > capacity) corrupt("neighbor count exceeds capacity");
            list.resize(n);
            for (auto& nb : list) {
                nb = get_le<std::uint32_t>(in, "neighbor slot");
                if (nb >= count) corrupt("neighbor slot out of range");
            }
        }
    }
    if (count == 0 ? g.entry_ != kNoSlot : g.entry_ >= count) corrupt("bad entry point");

    auto deleted = get_le<std::uint64_t>(in, "deleted list length");
    if (deleted > count) corrupt("deleted list longer than slot count");
    for (std::uint64_t i = 0; i < deleted; ++i) {
        auto s = get_le<std::uint32_t>(in, "deleted slot");
        if (s >= count) corrupt("deleted slot out of range");
        g.deleted_list_.push_back(s);
    }

    auto mapped = get_le<std::uint64_t>(in, "label index length");
    if (mapped > count) corrupt("label index longer than slot count");
    for (std::uint64_t i = 0; i < mapped; ++i) {
        auto label = get_le<std::uint64_t>(in, "label");
        auto slot = get_le<std::uint32_t>(in, "label slot");
        if (slot >= count) corrupt("label slot out of range");
        g.label_index_[label] = slot;
    }
    return g;
}

void save_snapshot_file(const LayeredGraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::kInput, "cannot open '" + path + "' for writing");
    }
    save_snapshot(g, out);
}

LayeredGraph load_snapshot_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::kInput, "cannot open '" + path + "'");
    }
    return load_snapshot(in);
}

}  // namespace hnswru
