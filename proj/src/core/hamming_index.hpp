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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/trainer.hpp"

namespace ppc {

/// Code words packed 64 bits per word, bit b of a code in word b / 64 at
/// position b % 64. A set bit means +1; padding bits are zero.
class PackedCodes {
 public:
  PackedCodes() = default;
  PackedCodes(std::size_t n, std::size_t p);

  std::size_t size() const { return n_; }
  std::size_t bits() const { return p_; }
  std::size_t words_per_code() const { return words_; }

  std::span<const std::uint64_t> code(std::size_t i) const {
    return {data_.data() + i * words_, words_};
  }
  int bit(std::size_t i, std::size_t b) const;
  void set_bit(std::size_t i, std::size_t b, int value);

  const std::vector<std::uint64_t>& words() const { return data_; }
  std::vector<std::uint64_t>& mutable_words() { return data_; }

  /// Optional per-point identifiers; empty or one per code.
  std::vector<std::string> ids;

  friend bool operator==(const PackedCodes&, const PackedCodes&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t p_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

PackedCodes pack(const CodeMatrix& codes);
CodeMatrix unpack(const PackedCodes& codes);

/// Uniform random +-1 codes, the baseline for retrieval comparisons.
PackedCodes random_codes(std::size_t n, std::size_t p, std::uint64_t seed);

/// Packs a single +-1 code word of length p.
std::vector<std::uint64_t> pack_code(std::span<const int> code);

/// 2 x (number of differing bits), matching k - <c_i, c_j>.
int hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

struct Neighbor {
  std::size_t index = 0;
  int distance = 0;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// All codes with distance <= alpha, sorted by (distance, index).
std::vector<Neighbor> query_radius(const PackedCodes& index,
                                   std::span<const std::uint64_t> query,
                                   double alpha);

/// The k nearest codes, ties by index; k > n returns every code.
std::vector<Neighbor> query_knn(const PackedCodes& index,
                                std::span<const std::uint64_t> query,
                                std::size_t k);

/// Binary file: "PPCB", u32 version, u64 n, u32 p, packed words, then an
/// optional id table (u64 count, then u32 length + bytes per id).
void save_codes(const PackedCodes& codes, const std::string& path);
PackedCodes load_codes(const std::string& path);

}  // namespace ppc
