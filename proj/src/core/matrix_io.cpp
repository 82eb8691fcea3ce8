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

#include "core/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

#include "core/error.hpp"

namespace ppc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view token, std::size_t line) {
  token = trim(token);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    fail(ErrorCode::kFormat, "line " + std::to_string(line) +
                                 ": cannot parse '" + std::string(token) + "'");
  }
  if (!std::isfinite(v)) {
    fail(ErrorCode::kValidation,
         "line " + std::to_string(line) + ": non-finite matrix entry");
  }
  return v;
}

}  // namespace

MatrixFormat parse_matrix_format(std::string_view name) {
  if (name == "auto") return MatrixFormat::kAuto;
  if (name == "dense") return MatrixFormat::kDense;
  if (name == "triples") return MatrixFormat::kTriples;
  fail(ErrorCode::kInvalidArgument, "unknown matrix format '" + std::string(name) + "'");
}

SignedWeightMatrix load_weight_matrix(const std::string& path, MatrixFormat format) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open matrix file: " + path);
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> line_numbers;
  std::string line;
  for (std::size_t ln = 1; std::getline(in, line); ++ln) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = body.find(',', start);
      row.push_back(parse_number(body.substr(start, comma - start), ln));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
    line_numbers.push_back(ln);
  }
  if (rows.empty()) fail(ErrorCode::kFormat, "matrix file has no entries: " + path);

  if (format == MatrixFormat::kAuto) {
    bool square = true;
    for (const auto& r : rows) square = square && r.size() == rows.size();
    format = square ? MatrixFormat::kDense : MatrixFormat::kTriples;
  }

  if (format == MatrixFormat::kDense) {
    const std::size_t n = rows.size();
    std::vector<double> values;
    values.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) {
        fail(ErrorCode::kFormat, "line " + std::to_string(line_numbers[i]) +
                                     ": expected " + std::to_string(n) + " values");
      }
      values.insert(values.end(), rows[i].begin(), rows[i].end());
    }
    return SignedWeightMatrix::from_dense(n, values);
  }

  std::size_t n = 0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto& r = rows[t];
    const auto where = "line " + std::to_string(line_numbers[t]);
    if (r.size() != 3) fail(ErrorCode::kFormat, where + ": expected i,j,w");
    for (int k = 0; k < 2; ++k) {
      if (r[k] < 0 || r[k] != std::floor(r[k]) || r[k] > 1e7) {
        fail(ErrorCode::kFormat, where + ": indices must be non-negative integers");
      }
      n = std::max(n, static_cast<std::size_t>(r[k]) + 1);
    }
  }
  SignedWeightMatrix w = SignedWeightMatrix::from_dense(n, std::vector<double>(n * n, 0.0));
  std::vector<char> seen(n * n, 0);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto i = static_cast<std::size_t>(rows[t][0]);
    const auto j = static_cast<std::size_t>(rows[t][1]);
    const double v = rows[t][2];
    if (seen[i * n + j] && w(i, j) != v) {
      fail(ErrorCode::kFormat, "line " + std::to_string(line_numbers[t]) +
                                   ": conflicting weight for pair (" +
                                   std::to_string(i) + "," + std::to_string(j) + ")");
    }
    seen[i * n + j] = seen[j * n + i] = 1;
    w.set(i, j, v);
  }
  return w;
}

}  // namespace ppc
