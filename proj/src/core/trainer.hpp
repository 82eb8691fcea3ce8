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
#include <string_view>
#include <vector>

#include "core/affinity.hpp"
#include "core/eigen_solver.hpp"
#include "core/initial_guess.hpp"
#include "core/signed_cut.hpp"

namespace ppc {

/// p x n matrix over {+1, -1}; row k holds bit k of every code word.
class CodeMatrix {
 public:
  CodeMatrix() = default;
  explicit CodeMatrix(std::size_t points) : points_(points) {}

  std::size_t bits() const { return rows_.size(); }
  std::size_t points() const { return points_; }
  int at(std::size_t bit, std::size_t point) const { return rows_[bit][point]; }
  const BitVector& bit_row(std::size_t bit) const { return rows_[bit]; }
  void append(const BitVector& b);

  friend bool operator==(const CodeMatrix&, const CodeMatrix&) = default;

 private:
  std::size_t points_ = 0;
  std::vector<BitVector> rows_;
};

/// Paper-convention distance k - B_ij (twice the mismatch count). Throws
/// kInternal when |B_ij| > k or the parity of B_ij differs from k's.
int hamming_from_gram(int gram, int bits);

enum class UpdateScheme { kBit, kVector };

UpdateScheme parse_update_scheme(std::string_view name);
std::string_view update_scheme_name(UpdateScheme scheme);

struct TrainConfig {
  std::size_t max_bits = 32;
  std::uint64_t target_empirical_loss = 0;
  UpdateScheme solver = UpdateScheme::kBit;
  InitMethod init = InitMethod::kRandom;
  std::size_t restarts = 4;
  std::uint64_t seed = 0;
  std::size_t max_points = 10000;
  std::size_t max_vector_iterations = 1000;
  std::size_t max_bit_sweeps = 100;
  EigenOptions eigen;

  void validate() const;
};

struct LossReport {
  /// Violated pairs at `alpha` (z_ij < 0).
  std::uint64_t empirical = 0;
  /// Sum of ln(1 + exp(-y (B - beta))) with beta = k - alpha.
  double relaxed = 0.0;
  double alpha = 0.0;
  /// Minimum violated-pair count over every threshold (and its threshold).
  std::uint64_t best_empirical = 0;
  double best_alpha = 0.0;
  double min_margin = 0.0;
  double mean_margin = 0.0;
};

struct AlphaChoice {
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t near_errors = 0;  // |E_N(alpha)|
  std::uint64_t far_errors = 0;   // |E_F(alpha)|
  /// No near or no far pairs; alpha is pinned to the matching extreme.
  bool degenerate = false;
};

class TrainerState {
 public:
  TrainerState() = default;
  explicit TrainerState(std::size_t n);

  std::size_t points() const { return n_; }
  int bits_done() const { return bits_done_; }
  int gram(std::size_t i, std::size_t j) const { return gram_[i * n_ + j]; }

  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  std::vector<LossReport> loss_history;

 private:
  friend void accumulate(TrainerState& state, const BitVector& b);

  std::size_t n_ = 0;
  int bits_done_ = 0;
  std::vector<std::int32_t> gram_;
};

/// B <- B + b b^T.
void accumulate(TrainerState& state, const BitVector& b);

std::uint64_t empirical_loss(const ProximityLabels& labels,
                             const TrainerState& state, double alpha);

double relaxed_loss(const ProximityLabels& labels, const TrainerState& state,
                    double beta);

/// ln(1 + exp(-z)) without overflow.
double logistic_loss(double z);

/// Full report at threshold alpha.
LossReport loss_report(const ProximityLabels& labels, const TrainerState& state,
                       double alpha);

/// Balances |E_N| and |E_F| over alpha in {-1, 1, 3, ..., 2k-1}; ties go to
/// the smaller alpha. beta = k - alpha.
AlphaChoice optimize_alpha(const ProximityLabels& labels,
                           const TrainerState& state);

/// W_ij = y_ij / (1 + exp(y_ij (B_ij - beta_hat))) off the diagonal, 0 on
/// it, using the state's current beta_hat.
SignedWeightMatrix weight_matrix(const ProximityLabels& labels,
                                 const TrainerState& state);

struct BitProposal {
  BitVector bits;
  double objective = 0.0;
  /// Objective of the initial guess that produced `bits`.
  double initial_objective = 0.0;
  std::size_t iterations = 0;
  bool converged = true;
  AlphaChoice step_one;
};

/// Step I (alpha balance; beta = 0 before the first bit) and Step II
/// (weight matrix and best-of-restarts signed cut). Updates the state's
/// alpha/beta but does not accumulate.
BitProposal propose_bit(TrainerState& state, const ProximityLabels& labels,
                        const TrainConfig& config);

struct CutSolution {
  BitVector bits;
  double objective = 0.0;
  double initial_objective = 0.0;
  std::size_t iterations = 0;
  bool converged = true;
  bool degenerate_init = false;
  std::size_t candidates = 0;
};

/// Best objective over the configured initial guesses (`restarts` of them for
/// seeded inits, one otherwise), each refined by the configured update.
CutSolution solve_cut(const SignedWeightMatrix& w, const TrainConfig& config,
                      std::uint64_t seed);

/// Accumulates b, re-balances alpha on the grown code and appends the
/// resulting loss report.
LossReport commit_bit(TrainerState& state, const ProximityLabels& labels,
                      const BitVector& b);

struct BitRecord {
  std::size_t bit = 0;  // 1-based
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t empirical_loss = 0;
  double relaxed_loss = 0.0;
  double solver_objective = 0.0;
  std::size_t iterations = 0;
  /// In-sample classifier agreement; 1 when no classifier is involved.
  double bit_accuracy = 1.0;
};

using BitCallback = std::function<void(const BitRecord&)>;

struct BitResult {
  BitVector bits;
  LossReport loss;
  BitProposal proposal;
};

BitResult train_bit(TrainerState& state, const ProximityLabels& labels,
                    const TrainConfig& config);

struct TrainResult {
  CodeMatrix codes;
  TrainerState state;
};

/// Emits bits until the best empirical loss reaches the target or max_bits
/// bits exist.
TrainResult train(const ProximityLabels& labels, const TrainConfig& config,
                  const BitCallback& on_bit = {});

}  // namespace ppc
