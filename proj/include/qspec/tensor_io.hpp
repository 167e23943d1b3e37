// Copyright 2026 The qspec authors
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

#include <cstddef>
#include <initializer_list>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qspec {

// Dense real tensor in the plain-text exchange format:
//   header line `<rank> <dims...>`, then row-major values, one per line.
struct TensorData {
  std::vector<std::size_t> dims;
  std::vector<double> values;

  std::size_t rank() const { return dims.size(); }

  std::size_t size() const {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                           [](std::size_t a, std::size_t b) { return a * b; });
  }

  std::size_t flat_index(std::initializer_list<std::size_t> idx) const {
    if (idx.size() != dims.size()) throw std::invalid_argument("tensor index rank mismatch");
    std::size_t flat = 0;
    std::size_t d = 0;
    for (std::size_t i : idx) {
      if (i >= dims[d]) throw std::out_of_range("tensor index out of range");
      flat = flat * dims[d] + i;
      ++d;
    }
    return flat;
  }

  double at(std::initializer_list<std::size_t> idx) const { return values[flat_index(idx)]; }
  double& at(std::initializer_list<std::size_t> idx) { return values[flat_index(idx)]; }

  static TensorData zeros(std::vector<std::size_t> dims_in) {
    TensorData t;
    t.dims = std::move(dims_in);
    t.values.assign(t.size(), 0.0);
    return t;
  }
};

inline TensorData read_tensor(std::istream& in) {
  TensorData t;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("tensor text: empty input");
  std::istringstream hs(line);
  std::size_t rank;
  if (!(hs >> rank)) throw std::invalid_argument("tensor text: bad header");
  t.dims.resize(rank);
  for (std::size_t d = 0; d < rank; ++d) {
    if (!(hs >> t.dims[d])) throw std::invalid_argument("tensor text: bad header dims");
  }
  const std::size_t n = t.size();
  t.values.reserve(n);
  double v;
  while (t.values.size() < n && (in >> v)) t.values.push_back(v);
  if (t.values.size() != n) throw std::invalid_argument("tensor text: wrong number of values");
  return t;
}

inline void write_tensor(std::ostream& out, const TensorData& t) {
  out << t.rank();
  for (std::size_t d : t.dims) out << " " << d;
  out << "\n";
  char buf[48];
  for (double v : t.values) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", v);
    out << buf;
  }
}

}  // namespace qspec
