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

#include "core/eigen_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace ppc {

namespace {

using Vec = std::vector<double>;

void matvec(const SymmetricMatrix& m, const Vec& x, Vec& y) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = m.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

double dot(const Vec& a, const Vec& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void scale(Vec& x, double s) {
  for (double& v : x) v *= s;
}

// Two passes of classical Gram-Schmidt against every vector in the sets.
void orthogonalize(Vec& z, const std::vector<Vec>& a, const std::vector<Vec>& b) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : a) axpy(-dot(q, z), q, z);
    for (const auto& q : b) axpy(-dot(q, z), q, z);
  }
}

double inf_norm(const SymmetricMatrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double s = 0.0;
    for (double v : m.row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

void normalize_sign(Vec& v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  for (double x : v) {
    if (std::abs(x) > 1e-10 * peak) {
      if (x < 0) scale(v, -1.0);
      return;
    }
  }
}

Vec random_unit(Rng& rng, std::size_t n, const std::vector<Vec>& a,
                const std::vector<Vec>& b) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vec z(n);
    for (double& v : z) v = rng.normal();
    orthogonalize(z, a, b);
    const double len = norm(z);
    if (len > 1e-8) {
      scale(z, 1.0 / len);
      return z;
    }
  }
  return {};
}

std::vector<Vec> orthonormal_deflation(std::span<const Vec> deflate,
                                       std::size_t n) {
  std::vector<Vec> locked;
  for (const auto& v : deflate) {
    require(v.size() == n, "deflation vector has wrong length");
    Vec z = v;
    orthogonalize(z, locked, {});
    const double len = norm(z);
    if (len > 1e-12) {
      scale(z, 1.0 / len);
      locked.push_back(std::move(z));
    }
  }
  return locked;
}

void flag_degeneracy(EigenResult& result, double next_value, bool has_next,
                     double gap_tol) {
  for (std::size_t i = 1; i < result.pairs.size(); ++i) {
    if (result.pairs[i].value - result.pairs[i - 1].value <= gap_tol) {
      result.degenerate = true;
    }
  }
  if (has_next && !result.pairs.empty() &&
      next_value - result.pairs.back().value <= gap_tol) {
    result.degenerate = true;
  }
}

EigenResult lanczos(const SymmetricMatrix& m, std::size_t k,
                    const EigenOptions& options, const std::vector<Vec>& locked,
                    double mat_scale) {
  const std::size_t n = m.size();
  const std::size_t space = n - locked.size();
  const std::size_t budget = std::min(space, options.max_iterations);
  const double target = options.tol * mat_scale;
  Rng rng(options.seed);

  std::vector<Vec> basis;
  Vec alpha;
  Vec beta;  // beta[j] couples basis[j] and basis[j+1]
  Vec z(n);
  Vec work(n);

  Vec q = random_unit(rng, n, locked, {});
  require(!q.empty(), "cannot build a start vector outside the deflated space",
          ErrorCode::kInternal);
  basis.push_back(q);

  std::size_t next_check = std::min(budget, std::max<std::size_t>(2 * k + 10, 20));
  EigenResult result;

  while (true) {
    const std::size_t j = basis.size() - 1;
    matvec(m, basis[j], z);
    ++result.iterations;
    const double a = dot(basis[j], z);
    alpha.push_back(a);
    axpy(-a, basis[j], z);
    if (j > 0) axpy(-beta[j - 1], basis[j - 1], z);
    orthogonalize(z, basis, locked);
    const double b = norm(z);

    const std::size_t steps = basis.size();
    const bool full = steps >= budget;
    if (steps >= next_check || full) {
      std::vector<double> d = alpha;
      std::vector<double> off(beta.begin(), beta.end());
      std::vector<double> s;
      tridiagonal_eigen(d, off, s);
      const std::size_t want = std::min(k, steps);
      bool ok = steps >= k;
      for (std::size_t idx = 0; idx < want && ok; ++idx) {
        ok = std::abs(b * s[(steps - 1) * steps + idx]) <= 0.5 * target;
      }
      if (ok || full) {
        result.pairs.clear();
        bool verified = true;
        for (std::size_t idx = 0; idx < want; ++idx) {
          Vec v(n, 0.0);
          for (std::size_t t = 0; t < steps; ++t) {
            axpy(s[t * steps + idx], basis[t], v);
          }
          scale(v, 1.0 / norm(v));
          matvec(m, v, work);
          const double lambda = dot(v, work);
          axpy(-lambda, v, work);
          if (norm(work) > target) verified = false;
          normalize_sign(v);
          result.pairs.push_back({lambda, std::move(v)});
        }
        if (verified) {
          const bool has_next = steps > want;
          flag_degeneracy(result, has_next ? d[want] : 0.0, has_next,
                          std::sqrt(options.tol) * mat_scale);
          return result;
        }
        if (full || want < k) {
          fail(ErrorCode::kNotConverged,
               "Lanczos did not reach residual tolerance after " +
                   std::to_string(steps) + " steps");
        }
      }
      next_check = std::min(budget, steps + std::max<std::size_t>(10, steps / 8));
    }

    if (b <= 1e-10 * mat_scale) {
      // Invariant subspace: continue from a fresh direction.
      Vec fresh = random_unit(rng, n, basis, locked);
      if (fresh.empty()) {
        fail(ErrorCode::kInternal, "Lanczos basis exhausted early");
      }
      beta.push_back(0.0);
      basis.push_back(std::move(fresh));
    } else {
      scale(z, 1.0 / b);
      beta.push_back(b);
      basis.push_back(z);
    }
  }
}

EigenResult power_deflation(const SymmetricMatrix& m, std::size_t k,
                            const EigenOptions& options,
                            const std::vector<Vec>& locked, double mat_scale) {
  const std::size_t n = m.size();
  // Gershgorin upper bound makes sigma*I - M positive semidefinite, so the
  // smallest eigenvalues of M become the dominant ones.
  double sigma = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    const auto row = m.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) r += std::abs(row[j]);
    }
    sigma = i == 0 ? row[i] + r : std::max(sigma, row[i] + r);
  }
  const double target = options.tol * mat_scale;
  // Later pairs inherit the residuals of the vectors they are deflated
  // against, so each pair is refined past the target while budget remains.
  const double tight = 0.01 * target;
  Rng rng(options.seed);
  EigenResult result;
  std::vector<Vec> found;
  Vec mv(n);
  // One pair beyond k, when the space allows, detects a repeated k-th value.
  const std::size_t wanted = std::min(k + 1, n - locked.size());
  double next_value = 0.0;

  for (std::size_t idx = 0; idx < wanted; ++idx) {
    const bool extra = idx == k;
    Vec v = random_unit(rng, n, locked, found);
    require(!v.empty(), "no space left for another eigenvector",
            ErrorCode::kInternal);
    double lambda = 0.0;
    double residual = INFINITY;
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
      matvec(m, v, mv);
      ++result.iterations;
      lambda = dot(v, mv);
      Vec r = mv;
      axpy(-lambda, v, r);
      residual = norm(r);
      if (residual <= (extra ? target : tight)) break;
      // v <- (sigma I - M) v, projected off the deflated directions.
      for (std::size_t i = 0; i < n; ++i) v[i] = sigma * v[i] - mv[i];
      orthogonalize(v, locked, found);
      const double len = norm(v);
      if (len == 0.0) break;
      scale(v, 1.0 / len);
    }
    if (extra) {
      next_value = lambda;
      break;
    }
    if (!(residual <= target)) {
      fail(ErrorCode::kNotConverged,
           "power iteration did not converge for eigenpair " +
               std::to_string(idx));
    }
    found.push_back(v);
    normalize_sign(v);
    result.pairs.push_back({lambda, std::move(v)});
  }
  std::stable_sort(result.pairs.begin(), result.pairs.end(),
                   [](const EigenPair& a, const EigenPair& b) {
                     return a.value < b.value;
                   });
  flag_degeneracy(result, next_value, wanted > k,
                  std::sqrt(options.tol) * mat_scale);
  return result;
}

}  // namespace

void tridiagonal_eigen(std::vector<double>& d, std::vector<double> off,
                       std::vector<double>& v) {
  const std::size_t n = d.size();
  v.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  if (n <= 1) return;
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = off[i];

  const double eps = std::numeric_limits<double>::epsilon();
  double f = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      std::size_t iter = 0;
      do {
        if (++iter > 64) {
          fail(ErrorCode::kNotConverged, "tridiagonal QL did not converge");
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0;
        double c2 = c;
        double c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          for (std::size_t row = 0; row < n; ++row) {
            h = v[row * n + ii + 1];
            v[row * n + ii + 1] = s * v[row * n + ii] + c * h;
            v[row * n + ii] = c * v[row * n + ii] - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  std::vector<double> d_sorted(n);
  std::vector<double> v_sorted(n * n);
  for (std::size_t c = 0; c < n; ++c) {
    d_sorted[c] = d[order[c]];
    for (std::size_t row = 0; row < n; ++row) {
      v_sorted[row * n + c] = v[row * n + order[c]];
    }
  }
  d = std::move(d_sorted);
  v = std::move(v_sorted);
}

EigenResult smallest_eigenpairs(const SymmetricMatrix& m, std::size_t k,
                                const EigenOptions& options,
                                std::span<const std::vector<double>> deflate) {
  const std::size_t n = m.size();
  require(n >= 1, "eigen solver needs a non-empty matrix");
  const auto locked = orthonormal_deflation(deflate, n);
  require(k >= 1 && k + locked.size() <= n,
          "requested " + std::to_string(k) + " eigenpairs from a space of " +
              "dimension " + std::to_string(n - locked.size()));
  require(options.tol > 0.0, "eigen tolerance must be positive");
  const double mat_scale = std::max(1.0, inf_norm(m));
  if (options.method == EigenMethod::kPowerDeflation) {
    return power_deflation(m, k, options, locked, mat_scale);
  }
  return lanczos(m, k, options, locked, mat_scale);
}

}  // namespace ppc
