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

// Independent reference implementations used only by the tests. They favor
// directness over speed and share no code with the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include <Eigen/Dense>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;
using Signs = std::vector<int>;

inline Matrix random_symmetric(std::size_t n, std::uint64_t seed,
                               bool integer = false, bool zero_diag = false) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> ints(-9, 9);
  Matrix w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (i == j && zero_diag) continue;
      const double v = integer ? ints(gen) : normal(gen);
      w[i][j] = w[j][i] = v;
    }
  }
  return w;
}

inline std::vector<double> flatten(const Matrix& w) {
  std::vector<double> out;
  for (const auto& row : w) out.insert(out.end(), row.begin(), row.end());
  return out;
}

inline double quad(const Matrix& w, const Signs& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    for (std::size_t i = 0; i < w.size(); ++i) s += b[i] * w[i][j] * b[j];
  }
  return s;
}

inline double quad_off_diagonal(const Matrix& w, const Signs& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (i != j) s += w[i][j] * b[i] * b[j];
    }
  }
  return s;
}

inline Signs from_mask(std::uint64_t mask, std::size_t n) {
  Signs b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = (mask >> i) & 1u ? -1 : 1;
  return b;
}

// Plain 2^n enumeration: maximum value, and the mean over all vectors.
struct Enumeration {
  double best = -INFINITY;
  double mean = 0.0;
  Signs argmax;
};

inline Enumeration enumerate(const Matrix& w) {
  const std::size_t n = w.size();
  Enumeration out;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const auto b = from_mask(mask, n);
    const double v = quad(w, b);
    out.mean += v / static_cast<double>(total);
    if (v > out.best) {
      out.best = v;
      out.argmax = b;
    }
  }
  return out;
}

inline Eigen::MatrixXd to_eigen(const Matrix& w) {
  const auto n = static_cast<Eigen::Index>(w.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = w[i][j];
  }
  return m;
}

// Ascending eigenvalues and unit eigenvectors (columns).
inline Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(const Matrix& w) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(to_eigen(w));
}

inline double min_eigenvalue(const Matrix& w) {
  return eig(w).eigenvalues()(0);
}

inline Matrix laplacian(const Matrix& w, bool absolute_degree) {
  const std::size_t n = w.size();
  Matrix l(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double deg = 0.0;
    for (std::size_t j = 0; j < n; ++j) deg += absolute_degree ? std::abs(w[i][j]) : w[i][j];
    for (std::size_t j = 0; j < n; ++j) l[i][j] = -w[i][j];
    l[i][i] += deg;
  }
  return l;
}

// Twice the number of differing positions.
inline int hamming(const Signs& a, const Signs& b) {
  int d = 0;
  for (std::size_t t = 0; t < a.size(); ++t) d += a[t] != b[t] ? 2 : 0;
  return d;
}

inline int inner(const Signs& a, const Signs& b) {
  int s = 0;
  for (std::size_t t = 0; t < a.size(); ++t) s += a[t] * b[t];
  return s;
}

// Code words as columns of a p x n matrix, given per point.
struct PairCounts {
  std::uint64_t near_violations = 0;
  std::uint64_t far_violations = 0;
};

// Near pairs violate when d > alpha, far pairs when d <= alpha.
template <typename NearFn>
PairCounts count_violations(const std::vector<Signs>& codes, NearFn near,
                            double alpha) {
  PairCounts c;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    for (std::size_t j = i + 1; j < codes.size(); ++j) {
      const int d = hamming(codes[i], codes[j]);
      if (near(i, j) && d > alpha) ++c.near_violations;
      if (!near(i, j) && d <= alpha) ++c.far_violations;
    }
  }
  return c;
}

inline double softplus_neg(double z) {
  // ln(1 + e^-z) via long double for a reference value.
  const long double zl = z;
  return static_cast<double>(zl > 0 ? std::log1p(std::exp(-zl))
                                    : -zl + std::log1p(std::exp(zl)));
}

inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("ppc_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace oracle
