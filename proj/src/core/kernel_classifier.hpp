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
#include <memory>
#include <span>
#include <vector>

#include "core/affinity.hpp"
#include "core/signed_cut.hpp"

namespace ppc {

struct KernelConfig {
  /// Gaussian width; <= 0 selects the median pairwise distance over a
  /// subsample of at most 1000 points.
  double sigma = 0.0;
  double ridge = 1e-3;
  /// Number of kernel centers m = min(n, centers), sampled once per seed.
  std::size_t centers = 1000;
  std::size_t max_iterations = 500;
  /// Stop when the gradient's max-norm falls below this.
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
};

/// Kernel centers and bandwidth, shared by every bit of a model.
struct KernelBasis {
  std::size_t m = 0;
  std::size_t d = 0;
  std::vector<double> centers;  // m x d row-major
  double sigma = 1.0;

  std::span<const double> center(std::size_t j) const {
    return {centers.data() + j * d, d};
  }
  /// exp(-||x - c_j||^2 / (2 sigma^2)) for every center.
  void evaluate(std::span<const double> x, std::span<double> out) const;
};

/// Median pairwise Euclidean distance over a seeded subsample.
double median_bandwidth(const Dataset& data, std::uint64_t seed,
                        std::size_t max_points = 1000);

/// Samples centers and resolves the bandwidth per `config`.
std::shared_ptr<const KernelBasis> make_kernel_basis(const Dataset& data,
                                                     const KernelConfig& config);

class KernelClassifier {
 public:
  KernelClassifier() = default;
  KernelClassifier(std::shared_ptr<const KernelBasis> basis,
                   std::vector<double> coefficients, double bias);

  const KernelBasis& basis() const { return *basis_; }
  std::shared_ptr<const KernelBasis> shared_basis() const { return basis_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  double bias() const { return bias_; }

  /// sum_j coeff_j k_j + bias for precomputed kernel values k.
  double decision_from_kernel(std::span<const double> kernel_row) const;
  double decision(std::span<const double> x) const;

 private:
  std::shared_ptr<const KernelBasis> basis_;
  std::vector<double> coefficients_;
  double bias_ = 0.0;
};

/// sign of the decision value, 0 -> +1. Throws on a dimension mismatch.
int predict_bit(const KernelClassifier& clf, std::span<const double> x);

/// Kernel values of every data row against the basis (n x m), computed once
/// and reused for all bits.
struct KernelDesign {
  std::shared_ptr<const KernelBasis> basis;
  std::size_t n = 0;
  std::vector<double> values;

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * basis->m, basis->m};
  }
};

KernelDesign make_design(const Dataset& data,
                         std::shared_ptr<const KernelBasis> basis);

struct FitResult {
  KernelClassifier classifier;
  /// Fraction of training points whose prediction equals the target.
  double accuracy = 0.0;
  bool converged = true;
  std::size_t iterations = 0;
  /// In-sample predictions, identical to predict_bit on each row.
  BitVector predictions;
};

/// Ridge-penalized kernel logistic regression trained by accelerated
/// full-gradient descent. Single-class targets give a constant classifier.
FitResult fit_bit_classifier(const KernelDesign& design, const BitVector& targets,
                             const KernelConfig& config);

/// Convenience overload that builds its own basis and design.
FitResult fit_bit_classifier(const Dataset& data, const BitVector& targets,
                             const KernelConfig& config);

}  // namespace ppc
