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

#include "hnswru/bench/vecs_io.hpp"

#include <fstream>

#include "../binary_io.hpp"

namespace hnswru::bench {

namespace {

template <class T>
VectorSet<T> read_vecs(std::istream& in, const char* kind) {
    VectorSet<T> out;
    std::int32_t d = 0;
    while (true) {
        auto offset = in.tellg();
        if (!detail::try_get_le(in, d, "record dimension")) break;
        auto where = " at byte offset " + std::to_string(static_cast<long long>(offset));
        if (d <= 0) {
            throw Error(ErrorCode::kFormat,
                        std::string(kind) + ": non-positive dimension " + std::to_string(d) + where);
        }
        if (out.dim == 0) {
            out.dim = static_cast<std::size_t>(d);
        } else if (out.dim != static_cast<std::size_t>(d)) {
            throw Error(ErrorCode::kFormat, std::string(kind) + ": record dimension " +
                                                std::to_string(d) + " differs from " +
                                                std::to_string(out.dim) + where);
        }
        for (std::int32_t i = 0; i < d; ++i) {
            out.values.push_back(detail::get_le<T>(in, "record component"));
        }
    }
    return out;
}

template <class T>
void write_vecs(std::ostream& out, const VectorSet<T>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        detail::put_le<std::int32_t>(out, static_cast<std::int32_t>(v.dim));
        for (std::size_t j = 0; j < v.dim; ++j) detail::put_le<T>(out, v.row(i)[j]);
    }
    if (!out) throw Error(ErrorCode::kInput, "write failed");
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kInput, "cannot open '" + path + "'");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kInput, "cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

FloatVectors read_fvecs(std::istream& in) { return read_vecs<float>(in, "fvecs"); }
IntVectors read_ivecs(std::istream& in) { return read_vecs<std::int32_t>(in, "ivecs"); }

FloatVectors load_fvecs(const std::string& path) {
    auto in = open_in(path);
    return read_fvecs(in);
}

IntVectors load_ivecs(const std::string& path) {
    auto in = open_in(path);
    return read_ivecs(in);
}

void write_fvecs(std::ostream& out, const FloatVectors& v) { write_vecs(out, v); }
void write_ivecs(std::ostream& out, const IntVectors& v) { write_vecs(out, v); }

void save_fvecs(const std::string& path, const FloatVectors& v) {
    auto out = open_out(path);
    write_fvecs(out, v);
}

void save_ivecs(const std::string& path, const IntVectors& v) {
    auto out = open_out(path);
    write_ivecs(out, v);
}

}  // namespace hnswru::bench
