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
#include <vector>

#include "core/signed_cut.hpp"

namespace ppc {

using SymmetricMatrix = SignedWeightMatrix;

enum class EigenMethod {
  /// Lanczos on the Gershgorin-shifted matrix with full reorthogonalization.
  kLanczos,
  /// Power iteration on sigma*I - M with deflation by projection.
  kPowerDeflation,
};

struct EigenOptions {
  /// Residual target ||Mv - lambda v|| <= tol * max(1, ||M||_inf).
  double tol = 1e-8;
  /// Matrix-vector product budget (per eigenpair for kPowerDeflation).
  std::size_t max_iterations = 100000;
  EigenMethod method = EigenMethod::kLanczos;
  std::uint64_t seed = 0x9d2c5680u;
};

struct EigenPair {
  double value = 0.0;
  /// Unit norm; sign fixed so the first non-negligible entry is positive.
  std::vector<double> vector;
};

struct EigenResult {
  std::vector<EigenPair> pairs;  // ascending by value
  /// Set when two returned eigenvalues, or the last returned one and the
  /// next one found, coincide to within sqrt(tol) * scale.
  bool degenerate = false;
  std::size_t iterations = 0;
};

/// The k algebraically smallest eigenpairs of a symmetric matrix, restricted
/// to the orthogonal complement of `deflate` (which must be spanned by
/// eigenvectors of m). Throws kNotConverged when the budget runs out.
EigenResult smallest_eigenpairs(const SymmetricMatrix& m, std::size_t k,
                                const EigenOptions& options = {},
                                std::span<const std::vector<double>> deflate = {});

/// Eigen-decomposition of a symmetric tridiagonal matrix (implicit QL).
/// `diag` has size m, `off` has size m-1. Returns eigenvalues ascending and
/// the matching eigenvectors as columns of a row-major m x m matrix.
void tridiagonal_eigen(std::vector<double>& diag, std::vector<double> off,
                       std::vector<double>& vectors);

}  // namespace ppc
