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

#include "core/signed_cut.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace ppc {

SignedWeightMatrix SignedWeightMatrix::from_dense(std::size_t n,
                                                  std::vector<double> data) {
  require(data.size() == n * n, "weight matrix buffer is not n*n",
          ErrorCode::kValidation);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = data[i * n + j];
      require(std::isfinite(v), "weight matrix entry (" + std::to_string(i) +
                                    "," + std::to_string(j) + ") is not finite",
              ErrorCode::kValidation);
      require(v == data[j * n + i],
              "weight matrix is not symmetric at (" + std::to_string(i) + "," +
                  std::to_string(j) + ")",
              ErrorCode::kValidation);
    }
  }
  SignedWeightMatrix w;
  w.n_ = n;
  w.data_ = std::move(data);
  return w;
}

BitVector BitVector::from_signs(std::span<const std::int8_t> signs) {
  BitVector b;
  b.bits_.reserve(signs.size());
  for (auto s : signs) {
    require(s == 1 || s == -1, "bit vector entries must be +1 or -1");
    b.bits_.push_back(s);
  }
  return b;
}

BitVector BitVector::from_signs(std::span<const int> signs) {
  BitVector b;
  b.bits_.reserve(signs.size());
  for (int s : signs) {
    require(s == 1 || s == -1, "bit vector entries must be +1 or -1");
    b.bits_.push_back(static_cast<std::int8_t>(s));
  }
  return b;
}

BitVector BitVector::negated() const {
  BitVector out = *this;
  for (auto& v : out.bits_) v = static_cast<std::int8_t>(-v);
  return out;
}

namespace {

void check_dims(const SignedWeightMatrix& w, const BitVector& b) {
  require(w.size() == b.size(),
          "dimension mismatch: matrix is " + std::to_string(w.size()) +
              ", bit vector is " + std::to_string(b.size()));
}

std::vector<double> as_doubles(const BitVector& b) {
  std::vector<double> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = b[i];
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * b[j];
  return acc;
}

// sum_{j != i} row[j] * b[j], skipping the diagonal rather than subtracting it
// so the result is bit-identical for any diagonal.
double off_diagonal_dot(std::span<const double> row, std::span<const double> b,
                        std::size_t i) {
  double acc = 0.0;
  for (std::size_t j = 0; j < i; ++j) acc += row[j] * b[j];
  for (std::size_t j = i + 1; j < row.size(); ++j) acc += row[j] * b[j];
  return acc;
}

}  // namespace

double objective(const SignedWeightMatrix& w, const BitVector& b) {
  check_dims(w, b);
  const auto bd = as_doubles(b);
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    total += bd[i] * dot(w.row(i), bd);
  }
  return total;
}

double off_diagonal_objective(const SignedWeightMatrix& w, const BitVector& b) {
  check_dims(w, b);
  const auto bd = as_doubles(b);
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    total += bd[i] * off_diagonal_dot(w.row(i), bd, i);
  }
  return total;
}

double gershgorin_lower_bound(const SignedWeightMatrix& w) {
  double bound = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto row = w.row(i);
    double radius = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j != i) radius += std::abs(row[j]);
    }
    const double lo = row[i] - radius;
    bound = (i == 0) ? lo : std::min(bound, lo);
  }
  return bound;
}

ShiftResult psd_shift(const SignedWeightMatrix& w) {
  ShiftResult out;
  out.shift = w.size() == 0 ? 0.0 : std::max(0.0, -gershgorin_lower_bound(w));
  out.matrix = w;
  if (out.shift > 0.0) out.matrix.add_diagonal(out.shift);
  return out;
}

std::pair<BitVector, SolverReport> vector_update(const SignedWeightMatrix& w,
                                                 const BitVector& b0,
                                                 const SolverOptions& options) {
  check_dims(w, b0);
  const auto shifted = psd_shift(w);
  const std::size_t n = w.size();

  SolverReport report;
  report.shift_applied = shifted.shift;

  BitVector current = b0;
  BitVector best = b0;
  double best_objective = objective(w, b0);
  std::vector<double> bd = as_doubles(current);
  BitVector next(n);

  for (std::size_t it = 1; it <= options.max_vector_iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      next.set(i, dot(shifted.matrix.row(i), bd) >= 0.0 ? 1 : -1);
    }
    report.iterations = it;
    if (options.on_iterate) options.on_iterate(next);
    if (next == current) {
      report.converged = true;
      break;
    }
    current = next;
    for (std::size_t i = 0; i < n; ++i) bd[i] = current[i];
    const double obj = objective(w, current);
    if (obj > best_objective) {
      best_objective = obj;
      best = current;
    }
  }

  BitVector result = report.converged ? current : best;
  report.objective = objective(w, result);
  return {std::move(result), report};
}

std::pair<BitVector, SolverReport> bit_update(const SignedWeightMatrix& w,
                                              const BitVector& b0,
                                              const SolverOptions& options) {
  check_dims(w, b0);
  const std::size_t n = w.size();
  BitVector b = b0;
  std::vector<double> bd = as_doubles(b);
  SolverReport report;

  for (std::size_t sweep = 1; sweep <= options.max_bit_sweeps; ++sweep) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = off_diagonal_dot(w.row(i), bd, i);
      if ((s > 0.0 && b[i] < 0) || (s < 0.0 && b[i] > 0)) {
        b.flip(i);
        bd[i] = b[i];
        changed = true;
      }
      if (options.on_bit_step) options.on_bit_step(i, b);
    }
    report.iterations = sweep;
    if (options.on_iterate) options.on_iterate(b);
    if (!changed) {
      report.converged = true;
      break;
    }
  }
  report.objective = objective(w, b);
  return {std::move(b), report};
}

bool is_one_flip_optimal(const SignedWeightMatrix& w, const BitVector& b) {
  check_dims(w, b);
  const auto bd = as_doubles(b);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (bd[i] * off_diagonal_dot(w.row(i), bd, i) < 0.0) return false;
  }
  return true;
}

BitVector init_random(std::size_t n, std::uint64_t seed) {
  require(n >= 1, "bit vector length must be >= 1");
  Rng rng(seed);
  BitVector b(n);
  for (std::size_t i = 0; i < n; ++i) b.set(i, rng.sign());
  return b;
}

ExhaustiveResult exhaustive_maxcut(const SignedWeightMatrix& w) {
  const std::size_t n = w.size();
  require(n >= 1, "exhaustive search needs n >= 1");
  require(n <= kMaxExhaustiveSize,
          "exhaustive search limited to n <= " +
              std::to_string(kMaxExhaustiveSize) + ", got " + std::to_string(n));

  // Mask bit m (0-based) set means position n-1-m is -1, so increasing mask
  // order is lexicographic order with +1 ahead of -1. Position 0 stays +1.
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  BitVector b(n);
  std::vector<double> bd(n, 1.0);
  std::vector<double> u(n);
  double scale = 1.0;
  for (double v : w.data()) scale += std::abs(v);
  const double tie_tol = 1e-12 * scale;

  auto refresh = [&]() {
    double obj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = dot(w.row(i), bd);
      obj += bd[i] * u[i];
    }
    return obj;
  };

  double obj = refresh();
  double best_value = obj;
  std::uint64_t best_mask = 0;
  std::uint64_t mask = 0;

  for (std::uint64_t t = 1; t < count; ++t) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(t));
    mask ^= std::uint64_t{1} << bit;
    const std::size_t p = n - 1 - bit;
    const double old = bd[p];
    obj += -4.0 * old * (u[p] - w(p, p) * old);
    bd[p] = -old;
    const auto col = w.row(p);
    for (std::size_t i = 0; i < n; ++i) u[i] += -2.0 * old * col[i];
    if ((t & 4095) == 0) obj = refresh();

    if (obj > best_value + tie_tol ||
        (obj >= best_value - tie_tol && mask < best_mask)) {
      best_value = obj;
      best_mask = mask;
    }
  }

  for (std::size_t m = 0; m + 1 < n; ++m) {
    if ((best_mask >> m) & 1U) b.set(n - 1 - m, -1);
  }
  ExhaustiveResult out{b, 0.0};
  out.value = objective(w, out.bits);
  return out;
}

}  // namespace ppc
