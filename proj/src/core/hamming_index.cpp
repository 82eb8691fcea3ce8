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

#include "core/hamming_index.hpp"

#include <algorithm>
#include <bit>
#include <fstream>

#include "core/byte_io.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"

namespace ppc {

namespace {

constexpr char kMagic[4] = {'P', 'P', 'C', 'B'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

PackedCodes::PackedCodes(std::size_t n, std::size_t p)
    : n_(n), p_(p), words_((p + 63) / 64), data_(n * words_, 0) {}

int PackedCodes::bit(std::size_t i, std::size_t b) const {
  return (data_[i * words_ + b / 64] >> (b % 64)) & 1u ? 1 : -1;
}

void PackedCodes::set_bit(std::size_t i, std::size_t b, int value) {
  auto& w = data_[i * words_ + b / 64];
  const std::uint64_t mask = std::uint64_t{1} << (b % 64);
  w = value > 0 ? (w | mask) : (w & ~mask);
}

PackedCodes pack(const CodeMatrix& codes) {
  PackedCodes out(codes.points(), codes.bits());
  for (std::size_t b = 0; b < codes.bits(); ++b) {
    const auto& row = codes.bit_row(b);
    for (std::size_t i = 0; i < codes.points(); ++i) out.set_bit(i, b, row[i]);
  }
  return out;
}

CodeMatrix unpack(const PackedCodes& codes) {
  CodeMatrix out(codes.size());
  for (std::size_t b = 0; b < codes.bits(); ++b) {
    BitVector row(codes.size());
    for (std::size_t i = 0; i < codes.size(); ++i) row.set(i, codes.bit(i, b));
    out.append(row);
  }
  return out;
}

PackedCodes random_codes(std::size_t n, std::size_t p, std::uint64_t seed) {
  PackedCodes out(n, p);
  Rng rng(derive_seed(seed, "random-codes"));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t b = 0; b < p; ++b) out.set_bit(i, b, rng.sign());
  }
  return out;
}

std::vector<std::uint64_t> pack_code(std::span<const int> code) {
  std::vector<std::uint64_t> out((code.size() + 63) / 64, 0);
  for (std::size_t b = 0; b < code.size(); ++b) {
    require(code[b] == 1 || code[b] == -1, "code entries must be +1 or -1");
    if (code[b] > 0) out[b / 64] |= std::uint64_t{1} << (b % 64);
  }
  return out;
}

int hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  require(a.size() == b.size(), "code word lengths differ");
  int count = 0;
  for (std::size_t w = 0; w < a.size(); ++w) count += std::popcount(a[w] ^ b[w]);
  return 2 * count;
}

std::vector<Neighbor> query_radius(const PackedCodes& index,
                                   std::span<const std::uint64_t> query,
                                   double alpha) {
  require(query.size() == index.words_per_code(),
          "query length does not match the index");
  std::vector<Neighbor> out;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const int d = hamming(index.code(i), query);
    if (d <= alpha) out.push_back({i, d});
  }
  std::stable_sort(out.begin(), out.end(), [](const Neighbor& x, const Neighbor& y) {
    return x.distance < y.distance;
  });
  return out;
}

std::vector<Neighbor> query_knn(const PackedCodes& index,
                                std::span<const std::uint64_t> query,
                                std::size_t k) {
  require(query.size() == index.words_per_code(),
          "query length does not match the index");
  std::vector<Neighbor> all(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    all[i] = {i, hamming(index.code(i), query)};
  }
  const auto less = [](const Neighbor& x, const Neighbor& y) {
    return x.distance != y.distance ? x.distance < y.distance : x.index < y.index;
  };
  k = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k),
                    all.end(), less);
  all.resize(k);
  return all;
}

void save_codes(const PackedCodes& codes, const std::string& path) {
  require(codes.ids.empty() || codes.ids.size() == codes.size(),
          "id table must be empty or hold one id per code");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write codes file: " + path);
  out.write(kMagic, 4);
  le::write(out, kVersion);
  le::write(out, static_cast<std::uint64_t>(codes.size()));
  le::write(out, static_cast<std::uint32_t>(codes.bits()));
  for (const auto w : codes.words()) le::write(out, w);
  if (!codes.ids.empty()) {
    le::write(out, static_cast<std::uint64_t>(codes.ids.size()));
    for (const auto& id : codes.ids) {
      le::write(out, static_cast<std::uint32_t>(id.size()));
      out.write(id.data(), static_cast<std::streamsize>(id.size()));
    }
  }
  if (!out) fail(ErrorCode::kIo, "write failed: " + path);
}

PackedCodes load_codes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open codes file: " + path);
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || !std::equal(magic, magic + 4, kMagic)) {
    fail(ErrorCode::kFormat, "not a codes file (bad magic): " + path);
  }
  std::uint32_t version = 0, p = 0;
  std::uint64_t n = 0;
  if (!le::read(in, version) || !le::read(in, n) || !le::read(in, p)) {
    fail(ErrorCode::kFormat, "truncated codes header: " + path);
  }
  if (version != kVersion) {
    fail(ErrorCode::kFormat, "unsupported codes version " + std::to_string(version));
  }
  const std::uint64_t words = n * ((p + 63) / 64);
  in.seekg(0, std::ios::end);
  const auto remaining = static_cast<std::uint64_t>(in.tellg()) - 20;
  if (remaining < words * 8) fail(ErrorCode::kFormat, "truncated codes payload: " + path);
  in.seekg(20);

  PackedCodes codes(n, p);
  for (auto& w : codes.mutable_words()) le::read(in, w);
  const std::uint64_t pad_mask =
      p % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (p % 64)) - 1;
  for (std::size_t i = 0; i < n && p > 0; ++i) {
    const auto last = codes.code(i).back();
    if (last & ~pad_mask) fail(ErrorCode::kFormat, "non-zero padding bits in codes file");
  }

  std::uint64_t count = 0;
  if (le::read(in, count)) {
    if (count != n) fail(ErrorCode::kFormat, "id table size does not match n");
    codes.ids.reserve(n);
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint32_t len = 0;
      if (!le::read(in, len)) fail(ErrorCode::kFormat, "truncated id table");
      std::string id(len, '\0');
      in.read(id.data(), len);
      if (!in) fail(ErrorCode::kFormat, "truncated id table");
      codes.ids.push_back(std::move(id));
    }
  }
  return codes;
}

}  // namespace ppc
