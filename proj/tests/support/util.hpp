// Copyright 2026 The PPC Authors
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

// Conversions between library types and the oracle representations.

#pragma once

#include <vector>

#include "core/signed_cut.hpp"
#include "core/trainer.hpp"
#include "support/oracles.hpp"

namespace testutil {

inline ppc::SignedWeightMatrix to_w(const oracle::Matrix& m) {
  return ppc::SignedWeightMatrix::from_dense(m.size(), oracle::flatten(m));
}

inline oracle::Matrix to_matrix(const ppc::SignedWeightMatrix& w) {
  oracle::Matrix m(w.size(), std::vector<double>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) m[i][j] = w(i, j);
  }
  return m;
}

inline oracle::Signs signs(const ppc::BitVector& b) {
  return {b.values().begin(), b.values().end()};
}

inline ppc::BitVector bits(const oracle::Signs& s) {
  return ppc::BitVector::from_signs(std::span<const int>(s));
}

// Code word of every point.
inline std::vector<oracle::Signs> columns(const ppc::CodeMatrix& c) {
  std::vector<oracle::Signs> out(c.points(), oracle::Signs(c.bits()));
  for (std::size_t b = 0; b < c.bits(); ++b) {
    for (std::size_t i = 0; i < c.points(); ++i) out[i][b] = c.at(b, i);
  }
  return out;
}

}  // namespace testutil
