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
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace ppc {

/// Dense symmetric n x n weight matrix, row-major. Positive entries attract,
/// negative entries repel.
class SignedWeightMatrix {
 public:
  SignedWeightMatrix() = default;
  explicit SignedWeightMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  /// Validates exact symmetry and finiteness of a row-major buffer.
  static SignedWeightMatrix from_dense(std::size_t n, std::vector<double> data);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }
  /// Writes (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double w) {
    data_[i * n_ + j] = w;
    data_[j * n_ + i] = w;
  }
  void add_diagonal(double c) {
    for (std::size_t i = 0; i < n_; ++i) data_[i * n_ + i] += c;
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * n_, n_};
  }
  std::span<double> mutable_row(std::size_t i) {
    return {data_.data() + i * n_, n_};
  }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// A vector over {+1, -1}.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n, int value = 1)
      : bits_(n, static_cast<std::int8_t>(value >= 0 ? 1 : -1)) {}
  /// Rejects any entry other than +1 / -1.
  static BitVector from_signs(std::span<const std::int8_t> signs);
  static BitVector from_signs(std::span<const int> signs);

  std::size_t size() const { return bits_.size(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, int value) {
    bits_[i] = static_cast<std::int8_t>(value >= 0 ? 1 : -1);
  }
  void flip(std::size_t i) { bits_[i] = static_cast<std::int8_t>(-bits_[i]); }
  BitVector negated() const;
  std::span<const std::int8_t> values() const { return bits_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::vector<std::int8_t> bits_;
};

/// sum_ij W[i,j] b[i] b[j], accumulated row by row in index order.
double objective(const SignedWeightMatrix& w, const BitVector& b);

/// Sum over i != j only; the quantity bit_update climbs.
double off_diagonal_objective(const SignedWeightMatrix& w, const BitVector& b);

struct ShiftResult {
  SignedWeightMatrix matrix;
  double shift = 0.0;
};

/// Gershgorin lower bound on the smallest eigenvalue.
double gershgorin_lower_bound(const SignedWeightMatrix& w);

/// W + shift*I with shift = max(0, -min_i(W_ii - R_i)), which is PSD.
ShiftResult psd_shift(const SignedWeightMatrix& w);

struct SolverReport {
  /// Objective on the unshifted input matrix.
  double objective = 0.0;
  std::size_t iterations = 0;
  double shift_applied = 0.0;
  bool converged = false;
};

struct SolverOptions {
  std::size_t max_vector_iterations = 1000;
  std::size_t max_bit_sweeps = 100;
  /// Called with every iterate after the initial guess: each sign(W'b)
  /// product for vector_update, each completed sweep for bit_update.
  std::function<void(const BitVector&)> on_iterate;
  /// bit_update only: called after every single-coordinate step.
  std::function<void(std::size_t, const BitVector&)> on_bit_step;
};

/// Whole-vector sign iteration b <- sign(W'b) on the PSD-shifted matrix;
/// sign(0) is +1. On cap exhaustion returns the best iterate seen.
std::pair<BitVector, SolverReport> vector_update(
    const SignedWeightMatrix& w, const BitVector& b0,
    const SolverOptions& options = {});

/// Coordinate sweeps b[i] <- sign(sum_{j != i} W[j,i] b[j]) with immediate
/// write-back; ties keep the current bit. Diagonal entries are never read.
std::pair<BitVector, SolverReport> bit_update(
    const SignedWeightMatrix& w, const BitVector& b0,
    const SolverOptions& options = {});

/// True when no single flip increases the off-diagonal objective.
bool is_one_flip_optimal(const SignedWeightMatrix& w, const BitVector& b);

BitVector init_random(std::size_t n, std::uint64_t seed);

struct ExhaustiveResult {
  BitVector bits;
  double value = 0.0;
};

/// Exact maximizer of b^T W b by Gray-code enumeration with b[0] = +1.
/// Ties resolve to the lexicographically first vector (+1 before -1).
ExhaustiveResult exhaustive_maxcut(const SignedWeightMatrix& w);

inline constexpr std::size_t kMaxExhaustiveSize = 22;

}  // namespace ppc
