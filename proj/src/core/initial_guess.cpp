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

#include "core/initial_guess.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace ppc {

namespace {

bool all_zero(const SymmetricMatrix& m) {
  for (double v : m.data()) {
    if (v != 0.0) return false;
  }
  return true;
}

BitVector sign_of(const std::vector<double>& v) {
  BitVector b(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) b.set(i, v[i] >= 0.0 ? 1 : -1);
  return b;
}

bool constant_pattern(const BitVector& b) {
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (b[i] != b[0]) return false;
  }
  return true;
}

std::vector<std::vector<double>> constant_direction(std::size_t n) {
  return {std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n)))};
}

InitialGuess trivial(std::size_t n) { return {BitVector(n, 1), true}; }

}  // namespace

SymmetricMatrix laplacian(const SignedWeightMatrix& w) {
  const std::size_t n = w.size();
  SymmetricMatrix l(n);
  for (std::size_t i = 0; i < n; ++i) {
    double degree = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) {
        degree += w(i, j);
        l.set(i, j, -w(i, j));
      }
    }
    l.set(i, i, degree);
  }
  return l;
}

SymmetricMatrix signed_laplacian(const SignedWeightMatrix& w) {
  const std::size_t n = w.size();
  SymmetricMatrix l(n);
  for (std::size_t i = 0; i < n; ++i) {
    double degree = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      degree += std::abs(w(i, j));
      if (j != i) l.set(i, j, -w(i, j));
    }
    l.set(i, i, degree - w(i, i));
  }
  return l;
}

InitMethod parse_init_method(std::string_view name) {
  if (name == "random") return InitMethod::kRandom;
  if (name == "fiedler") return InitMethod::kFiedler;
  if (name == "signed-laplacian") return InitMethod::kSignedLaplacian;
  if (name == "random-projection") return InitMethod::kRandomProjection;
  fail(ErrorCode::kInvalidArgument,
       "unknown init method '" + std::string(name) + "'");
}

std::string_view init_method_name(InitMethod method) {
  switch (method) {
    case InitMethod::kRandom: return "random";
    case InitMethod::kFiedler: return "fiedler";
    case InitMethod::kSignedLaplacian: return "signed-laplacian";
    case InitMethod::kRandomProjection: return "random-projection";
  }
  return "random";
}

InitialGuess init_fiedler(const SignedWeightMatrix& w,
                          const EigenOptions& options) {
  const std::size_t n = w.size();
  require(n >= 1, "empty weight matrix");
  const auto l = laplacian(w);
  if (n == 1 || all_zero(l)) return trivial(n);
  const auto trivial_dir = constant_direction(n);
  const auto eig = smallest_eigenpairs(l, 1, options, trivial_dir);
  return {sign_of(eig.pairs[0].vector), eig.degenerate};
}

InitialGuess init_signed_laplacian(const SignedWeightMatrix& w,
                                   const EigenOptions& options) {
  const std::size_t n = w.size();
  require(n >= 1, "empty weight matrix");
  const auto l = signed_laplacian(w);
  if (n == 1 || all_zero(l)) return trivial(n);
  const auto eig = smallest_eigenpairs(l, 2, options);
  for (const auto& pair : eig.pairs) {
    auto bits = sign_of(pair.vector);
    if (!constant_pattern(bits)) return {std::move(bits), eig.degenerate};
  }
  return {sign_of(eig.pairs[1].vector), eig.degenerate};
}

BitVector project_signs(const EigenResult& eig, std::span<const double> coeffs) {
  require(!eig.pairs.empty() && coeffs.size() == eig.pairs.size(),
          "one coefficient per eigenvector required");
  const std::size_t n = eig.pairs[0].vector.size();
  std::vector<double> mix(n, 0.0);
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      mix[i] += coeffs[m] * eig.pairs[m].vector[i];
    }
  }
  return sign_of(mix);
}

InitialGuess init_random_projection(const SignedWeightMatrix& w,
                                    std::uint64_t seed,
                                    const EigenOptions& options) {
  const std::size_t n = w.size();
  require(n >= 1, "empty weight matrix");
  const auto l = laplacian(w);
  if (n == 1 || all_zero(l)) return trivial(n);
  const std::size_t k = std::min<std::size_t>(3, n - 1);
  const auto trivial_dir = constant_direction(n);
  const auto eig = smallest_eigenpairs(l, k, options, trivial_dir);
  Rng rng(seed);
  std::vector<double> coeffs(k);
  for (double& g : coeffs) g = rng.normal();
  return {project_signs(eig, coeffs), eig.degenerate};
}

InitialGuess initial_guess(InitMethod method, const SignedWeightMatrix& w,
                           std::uint64_t seed, const EigenOptions& options) {
  switch (method) {
    case InitMethod::kRandom: return {init_random(w.size(), seed), false};
    case InitMethod::kFiedler: return init_fiedler(w, options);
    case InitMethod::kSignedLaplacian: return init_signed_laplacian(w, options);
    case InitMethod::kRandomProjection:
      return init_random_projection(w, seed, options);
  }
  return {init_random(w.size(), seed), false};
}

}  // namespace ppc
