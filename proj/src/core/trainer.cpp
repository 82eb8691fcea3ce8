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

#include "core/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace ppc {

void CodeMatrix::append(const BitVector& b) {
  require(b.size() == points_, "bit row length does not match point count");
  rows_.push_back(b);
}

int hamming_from_gram(int gram, int bits) {
  if (std::abs(gram) > bits || ((bits - gram) & 1) != 0) {
    fail(ErrorCode::kInternal, "gram entry " + std::to_string(gram) +
                                   " is inconsistent with " +
                                   std::to_string(bits) + " bits");
  }
  return bits - gram;
}

UpdateScheme parse_update_scheme(std::string_view name) {
  if (name == "bit") return UpdateScheme::kBit;
  if (name == "vector") return UpdateScheme::kVector;
  fail(ErrorCode::kInvalidArgument,
       "unknown update scheme '" + std::string(name) + "'");
}

std::string_view update_scheme_name(UpdateScheme scheme) {
  return scheme == UpdateScheme::kBit ? "bit" : "vector";
}

void TrainConfig::validate() const {
  require(max_bits >= 1, "code length p must be >= 1", ErrorCode::kValidation);
  require(restarts >= 1, "restarts must be >= 1", ErrorCode::kValidation);
  require(max_points >= 2, "max_points must be >= 2", ErrorCode::kValidation);
  require(max_vector_iterations >= 1 && max_bit_sweeps >= 1,
          "solver iteration caps must be >= 1", ErrorCode::kValidation);
}

TrainerState::TrainerState(std::size_t n) : n_(n), gram_(n * n, 0) {}

void accumulate(TrainerState& state, const BitVector& b) {
  require(b.size() == state.n_,
          "dimension mismatch: state has " + std::to_string(state.n_) +
              " points, bit has " + std::to_string(b.size()));
  const std::size_t n = state.n_;
  for (std::size_t i = 0; i < n; ++i) {
    const int bi = b[i];
    std::int32_t* row = state.gram_.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) row[j] += bi * b[j];
  }
  ++state.bits_done_;
}

double logistic_loss(double z) {
  return std::max(-z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

namespace {

void check_labels(const ProximityLabels& labels, const TrainerState& state) {
  require(labels.n() == state.points(),
          "labels cover " + std::to_string(labels.n()) +
              " points but the state has " + std::to_string(state.points()));
}

// Near and far pair counts per distance d = 2t, t = 0..k.
struct DistanceHistogram {
  std::vector<std::uint64_t> near;
  std::vector<std::uint64_t> far;
};

DistanceHistogram histogram(const ProximityLabels& labels,
                            const TrainerState& state) {
  const int k = state.bits_done();
  DistanceHistogram h{std::vector<std::uint64_t>(k + 1, 0),
                      std::vector<std::uint64_t>(k + 1, 0)};
  const std::size_t n = state.points();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int t = hamming_from_gram(state.gram(i, j), k) / 2;
      if (labels.near(i, j)) {
        ++h.near[t];
      } else {
        ++h.far[t];
      }
    }
  }
  return h;
}

}  // namespace

std::uint64_t empirical_loss(const ProximityLabels& labels,
                             const TrainerState& state, double alpha) {
  check_labels(labels, state);
  const int k = state.bits_done();
  std::uint64_t errors = 0;
  const std::size_t n = state.points();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double z = labels.label(i, j) *
                       (alpha - hamming_from_gram(state.gram(i, j), k));
      if (z < 0.0) ++errors;
    }
  }
  return errors;
}

double relaxed_loss(const ProximityLabels& labels, const TrainerState& state,
                    double beta) {
  check_labels(labels, state);
  // Neumaier summation keeps the total accurate over millions of pairs.
  double total = 0.0;
  double carry = 0.0;
  const std::size_t n = state.points();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double term =
          logistic_loss(labels.label(i, j) * (state.gram(i, j) - beta));
      const double t = total + term;
      carry += std::abs(total) >= std::abs(term) ? (total - t) + term
                                                 : (term - t) + total;
      total = t;
    }
  }
  return total + carry;
}

LossReport loss_report(const ProximityLabels& labels, const TrainerState& state,
                       double alpha) {
  check_labels(labels, state);
  const int k = state.bits_done();
  LossReport report;
  report.alpha = alpha;
  report.empirical = empirical_loss(labels, state, alpha);
  report.relaxed = relaxed_loss(labels, state, k - alpha);

  // Minimum over every distinct threshold: alpha = 2t - 1, t = 0..k+1.
  const auto h = histogram(labels, state);
  std::uint64_t near_above = labels.near_count();
  std::uint64_t far_below = 0;
  report.best_empirical = std::numeric_limits<std::uint64_t>::max();
  for (int t = 0; t <= k + 1; ++t) {
    if (t > 0) {
      near_above -= h.near[t - 1];
      far_below += h.far[t - 1];
    }
    if (near_above + far_below < report.best_empirical) {
      report.best_empirical = near_above + far_below;
      report.best_alpha = 2.0 * t - 1.0;
    }
  }

  const std::size_t n = state.points();
  double sum = 0.0;
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double z = labels.label(i, j) *
                       (alpha - hamming_from_gram(state.gram(i, j), k));
      sum += z;
      lowest = std::min(lowest, z);
    }
  }
  const auto pairs = labels.pair_count();
  report.min_margin = pairs ? lowest : 0.0;
  report.mean_margin = pairs ? sum / static_cast<double>(pairs) : 0.0;
  return report;
}

AlphaChoice optimize_alpha(const ProximityLabels& labels,
                           const TrainerState& state) {
  check_labels(labels, state);
  const int k = state.bits_done();
  require(k >= 1, "alpha optimization needs at least one bit");
  AlphaChoice best;
  const auto h = histogram(labels, state);

  auto at = [&](int t) {
    // alpha = 2t - 1: near errors have d >= 2t, far errors d <= 2t - 2.
    AlphaChoice c;
    c.alpha = 2.0 * t - 1.0;
    for (int s = t; s <= k; ++s) c.near_errors += h.near[s];
    for (int s = 0; s < t; ++s) c.far_errors += h.far[s];
    return c;
  };

  if (labels.far_count() == 0 || labels.near_count() == 0) {
    best = at(labels.far_count() == 0 ? k : 0);
    best.degenerate = true;
  } else {
    std::uint64_t best_gap = std::numeric_limits<std::uint64_t>::max();
    for (int t = 0; t <= k; ++t) {
      const auto c = at(t);
      const std::uint64_t gap = c.near_errors > c.far_errors
                                    ? c.near_errors - c.far_errors
                                    : c.far_errors - c.near_errors;
      if (gap < best_gap) {
        best_gap = gap;
        best = c;
      }
    }
  }
  best.beta = k - best.alpha;
  return best;
}

SignedWeightMatrix weight_matrix(const ProximityLabels& labels,
                                 const TrainerState& state) {
  check_labels(labels, state);
  const std::size_t n = state.points();
  const double beta = state.beta_hat;
  SignedWeightMatrix w(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int y = labels.label(i, j);
      // y * sigmoid(-y * gamma), evaluated on the non-overflowing branch.
      const double t = y * (state.gram(i, j) - beta);
      double pull;
      if (t >= 0.0) {
        const double e = std::exp(-t);
        pull = e / (1.0 + e);
      } else {
        pull = 1.0 / (1.0 + std::exp(t));
      }
      w.set(i, j, y * pull);
    }
  }
  return w;
}

BitProposal propose_bit(TrainerState& state, const ProximityLabels& labels,
                        const TrainConfig& config) {
  check_labels(labels, state);
  BitProposal out;
  if (state.bits_done() == 0) {
    state.alpha_hat = 0.0;
    state.beta_hat = 0.0;
    out.step_one.alpha = 0.0;
    out.step_one.beta = 0.0;
  } else {
    out.step_one = optimize_alpha(labels, state);
    state.alpha_hat = out.step_one.alpha;
    state.beta_hat = out.step_one.beta;
  }

  const auto w = weight_matrix(labels, state);
  const std::uint64_t bit_seed = derive_seed(
      config.seed, "bit", static_cast<std::uint64_t>(state.bits_done()));
  auto best = solve_cut(w, config, bit_seed);
  out.bits = std::move(best.bits);
  out.objective = best.objective;
  out.initial_objective = best.initial_objective;
  out.iterations = best.iterations;
  out.converged = best.converged;
  return out;
}

CutSolution solve_cut(const SignedWeightMatrix& w, const TrainConfig& config,
                      std::uint64_t seed) {
  SolverOptions solver;
  solver.max_bit_sweeps = config.max_bit_sweeps;
  solver.max_vector_iterations = config.max_vector_iterations;

  const bool seeded = config.init == InitMethod::kRandom ||
                      config.init == InitMethod::kRandomProjection;
  const std::size_t candidates = seeded ? std::max<std::size_t>(config.restarts, 1) : 1;

  CutSolution out;
  for (std::size_t r = 0; r < candidates; ++r) {
    const auto guess =
        initial_guess(config.init, w, derive_seed(seed, "restart", r), config.eigen);
    auto [bits, report] = config.solver == UpdateScheme::kBit
                              ? bit_update(w, guess.bits, solver)
                              : vector_update(w, guess.bits, solver);
    if (r == 0 || report.objective > out.objective) {
      out.objective = report.objective;
      out.initial_objective = objective(w, guess.bits);
      out.iterations = report.iterations;
      out.converged = report.converged;
      out.degenerate_init = guess.degenerate;
      out.bits = std::move(bits);
    }
  }
  out.candidates = candidates;
  return out;
}

LossReport commit_bit(TrainerState& state, const ProximityLabels& labels,
                      const BitVector& b) {
  check_labels(labels, state);
  accumulate(state, b);
  const auto choice = optimize_alpha(labels, state);
  state.alpha_hat = choice.alpha;
  state.beta_hat = choice.beta;
  auto report = loss_report(labels, state, choice.alpha);
  state.loss_history.push_back(report);
  return report;
}

BitResult train_bit(TrainerState& state, const ProximityLabels& labels,
                    const TrainConfig& config) {
  BitResult out;
  out.proposal = propose_bit(state, labels, config);
  out.bits = out.proposal.bits;
  out.loss = commit_bit(state, labels, out.bits);
  return out;
}

TrainResult train(const ProximityLabels& labels, const TrainConfig& config,
                  const BitCallback& on_bit) {
  config.validate();
  require(labels.n() >= 2, "training needs at least two points",
          ErrorCode::kValidation);
  require(labels.n() <= config.max_points,
          "point count " + std::to_string(labels.n()) +
              " exceeds max_points " + std::to_string(config.max_points),
          ErrorCode::kValidation);
  TrainResult result{CodeMatrix(labels.n()), TrainerState(labels.n())};
  for (std::size_t bit = 1; bit <= config.max_bits; ++bit) {
    const auto step = train_bit(result.state, labels, config);
    result.codes.append(step.bits);
    if (on_bit) {
      on_bit({bit, step.loss.alpha, result.state.beta_hat, step.loss.empirical,
              step.loss.relaxed, step.proposal.objective,
              step.proposal.iterations, 1.0});
    }
    if (step.loss.best_empirical <= config.target_empirical_loss) break;
  }
  return result;
}

}  // namespace ppc
