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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hnswru::bench {

/// Row-major set of equal-length vectors.
template <class T>
struct VectorSet {
    std::size_t dim = 0;
    std::vector<T> values;

    std::size_t size() const noexcept { return dim == 0 ? 0 : values.size() / dim; }
    const T* row(std::size_t i) const noexcept { return values.data() + i * dim; }
    T* row(std::size_t i) noexcept { return values.data() + i * dim; }
};

using FloatVectors = VectorSet<float>;
using IntVectors = VectorSet<std::int32_t>;

// .fvecs / .ivecs: each record is a little-endian int32 dimension d followed
// by d little-endian float32 (fvecs) or int32 (ivecs) values. Every record
// shares d. A truncated record or a differing d raises Error(kFormat) naming
// the byte offset.

FloatVectors read_fvecs(std::istream& in);
IntVectors read_ivecs(std::istream& in);
FloatVectors load_fvecs(const std::string& path);
IntVectors load_ivecs(const std::string& path);

void write_fvecs(std::ostream& out, const FloatVectors& vectors);
void write_ivecs(std::ostream& out, const IntVectors& vectors);
void save_fvecs(const std::string& path, const FloatVectors& vectors);
void save_ivecs(const std::string& path, const IntVectors& vectors);

}  // namespace hnswru::bench
