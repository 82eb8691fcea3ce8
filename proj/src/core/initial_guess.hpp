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

#include <cstdint>
#include <span>
#include <string_view>

#include "core/eigen_solver.hpp"
#include "core/signed_cut.hpp"

namespace ppc {

/// L = D - W with D_ii = sum_j W_ij.
SymmetricMatrix laplacian(const SignedWeightMatrix& w);

/// Signed Laplacian D_abs - W with D_abs_ii = sum_j |W_ij|; always PSD.
SymmetricMatrix signed_laplacian(const SignedWeightMatrix& w);

enum class InitMethod { kRandom, kFiedler, kSignedLaplacian, kRandomProjection };

InitMethod parse_init_method(std::string_view name);
std::string_view init_method_name(InitMethod method);

struct InitialGuess {
  BitVector bits;
  /// The relaxation had no unique answer (zero matrix or repeated
  /// eigenvalue); bits are still a valid guess.
  bool degenerate = false;
};

/// Thresholds the eigenvector of the smallest eigenvalue of L on the
/// complement of the constant vector. For non-negative weights this is the
/// Fiedler vector.
InitialGuess init_fiedler(const SignedWeightMatrix& w,
                          const EigenOptions& options = {});

/// Thresholds the first of the two smallest eigenvectors of the signed
/// Laplacian whose sign pattern is not constant, else the second one.
InitialGuess init_signed_laplacian(const SignedWeightMatrix& w,
                                   const EigenOptions& options = {});

/// sign(sum_m g_m v_m) over the three smallest non-trivial eigenvectors of L
/// (fewer when n < 4) with Gaussian g drawn from `seed`.
InitialGuess init_random_projection(const SignedWeightMatrix& w,
                                    std::uint64_t seed,
                                    const EigenOptions& options = {});

/// sign(sum_m coeffs[m] * pairs[m].vector), zeros to +1.
BitVector project_signs(const EigenResult& eig, std::span<const double> coeffs);

/// Dispatch; kRandom ignores w's entries.
InitialGuess initial_guess(InitMethod method, const SignedWeightMatrix& w,
                           std::uint64_t seed, const EigenOptions& options = {});

}  // namespace ppc
