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

#include "core/kernel_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace ppc {

void KernelBasis::evaluate(std::span<const double> x,
                           std::span<double> out) const {
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (std::size_t j = 0; j < m; ++j) {
    const auto c = center(j);
    double sq = 0.0;
    for (std::size_t t = 0; t < d; ++t) {
      const double diff = x[t] - c[t];
      sq += diff * diff;
    }
    out[j] = std::exp(-sq * inv);
  }
}

namespace {

// Sorted sample of `count` distinct indices from [0, n).
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t count,
                                        std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (count >= n) return idx;
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

double median_bandwidth(const Dataset& data, std::uint64_t seed,
                        std::size_t max_points) {
  const auto idx = sample_indices(data.n, max_points,
                                  derive_seed(seed, "bandwidth-sample"));
  std::vector<double> dists;
  dists.reserve(idx.size() * (idx.size() - 1) / 2);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      dists.push_back(
          distance(data.row(idx[a]), data.row(idx[b]), Metric::kEuclidean));
    }
  }
  if (dists.empty()) return 1.0;
  const auto mid = dists.begin() + static_cast<std::ptrdiff_t>(dists.size() / 2);
  std::nth_element(dists.begin(), mid, dists.end());
  return *mid > 0.0 ? *mid : 1.0;
}

std::shared_ptr<const KernelBasis> make_kernel_basis(const Dataset& data,
                                                     const KernelConfig& config) {
  require(data.n >= 1 && data.d >= 1, "kernel basis needs data");
  require(config.centers >= 1, "kernel needs at least one center",
          ErrorCode::kValidation);
  auto basis = std::make_shared<KernelBasis>();
  const auto idx = sample_indices(data.n, config.centers,
                                  derive_seed(config.seed, "kernel-centers"));
  basis->m = idx.size();
  basis->d = data.d;
  basis->centers.reserve(basis->m * data.d);
  for (auto i : idx) {
    const auto r = data.row(i);
    basis->centers.insert(basis->centers.end(), r.begin(), r.end());
  }
  basis->sigma = config.sigma > 0.0 ? config.sigma
                                    : median_bandwidth(data, config.seed);
  return basis;
}

KernelClassifier::KernelClassifier(std::shared_ptr<const KernelBasis> basis,
                                   std::vector<double> coefficients, double bias)
    : basis_(std::move(basis)), coefficients_(std::move(coefficients)),
      bias_(bias) {
  require(basis_ != nullptr, "classifier needs a kernel basis");
  require(coefficients_.size() == basis_->m,
          "coefficient count does not match the number of centers");
  require(basis_->sigma > 0.0, "kernel bandwidth must be positive");
}

double KernelClassifier::decision_from_kernel(
    std::span<const double> kernel_row) const {
  double acc = 0.0;
  for (std::size_t j = 0; j < coefficients_.size(); ++j) {
    acc += coefficients_[j] * kernel_row[j];
  }
  return acc + bias_;
}

double KernelClassifier::decision(std::span<const double> x) const {
  require(x.size() == basis_->d,
          "query has " + std::to_string(x.size()) + " features, model expects " +
              std::to_string(basis_->d));
  std::vector<double> k(basis_->m);
  basis_->evaluate(x, k);
  return decision_from_kernel(k);
}

int predict_bit(const KernelClassifier& clf, std::span<const double> x) {
  return clf.decision(x) >= 0.0 ? 1 : -1;
}

KernelDesign make_design(const Dataset& data,
                         std::shared_ptr<const KernelBasis> basis) {
  require(data.d == basis->d, "design data dimension does not match basis");
  KernelDesign design;
  design.n = data.n;
  design.values.resize(data.n * basis->m);
  for (std::size_t i = 0; i < data.n; ++i) {
    basis->evaluate(data.row(i),
                    std::span<double>(design.values.data() + i * basis->m,
                                      basis->m));
  }
  design.basis = std::move(basis);
  return design;
}

FitResult fit_bit_classifier(const KernelDesign& design,
                             const BitVector& targets,
                             const KernelConfig& config) {
  const std::size_t n = design.n;
  const std::size_t m = design.basis->m;
  require(targets.size() == n, "target length does not match the data");
  require(config.ridge >= 0.0, "ridge must be non-negative",
          ErrorCode::kValidation);

  FitResult out;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n; ++i) positives += targets[i] > 0;
  if (positives == 0 || positives == n) {
    const double sign = positives == n ? 1.0 : -1.0;
    out.classifier = KernelClassifier(design.basis, std::vector<double>(m, 0.0),
                                      sign);
    out.accuracy = 1.0;
    out.predictions = targets;
    return out;
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = targets[i];

  // Step size from a power-iteration estimate of ||[K 1]||_2^2.
  double lipschitz;
  {
    std::vector<double> v(m + 1, 1.0 / std::sqrt(static_cast<double>(m + 1)));
    std::vector<double> kv(n);
    double est = 1.0;
    for (int it = 0; it < 30; ++it) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto r = design.row(i);
        double acc = v[m];
        for (std::size_t j = 0; j < m; ++j) acc += r[j] * v[j];
        kv[i] = acc;
      }
      std::vector<double> next(m + 1, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const auto r = design.row(i);
        for (std::size_t j = 0; j < m; ++j) next[j] += r[j] * kv[i];
        next[m] += kv[i];
      }
      double len = 0.0;
      for (double x : next) len += x * x;
      len = std::sqrt(len);
      if (len == 0.0) break;
      est = len;
      for (std::size_t j = 0; j <= m; ++j) v[j] = next[j] / len;
    }
    lipschitz = 1.5 * (0.25 * inv_n * est + config.ridge);
  }
  const double step = 1.0 / lipschitz;

  // Parameters are coefficients[0..m) followed by the bias.
  std::vector<double> x(m + 1, 0.0);
  std::vector<double> x_prev = x;
  std::vector<double> look = x;
  std::vector<double> grad(m + 1);
  std::vector<double> f(n);
  std::vector<double> best = x;
  double best_obj = std::numeric_limits<double>::infinity();
  double momentum = 1.0;
  double prev_obj = std::numeric_limits<double>::infinity();
  out.converged = false;

  auto evaluate = [&](const std::vector<double>& p, bool with_grad) {
    double obj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = design.row(i);
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += p[j] * r[j];
      f[i] = acc + p[m];
      const double z = y[i] * f[i];
      obj += std::max(-z, 0.0) + std::log1p(std::exp(-std::abs(z)));
    }
    obj *= inv_n;
    double reg = 0.0;
    for (std::size_t j = 0; j < m; ++j) reg += p[j] * p[j];
    obj += 0.5 * config.ridge * reg;
    if (with_grad) {
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double resid = -y[i] * sigmoid(-y[i] * f[i]) * inv_n;
        const auto r = design.row(i);
        for (std::size_t j = 0; j < m; ++j) grad[j] += resid * r[j];
        grad[m] += resid;
      }
      for (std::size_t j = 0; j < m; ++j) grad[j] += config.ridge * p[j];
    }
    return obj;
  };

  for (std::size_t it = 0; it < config.max_iterations; ++it) {
    out.iterations = it + 1;
    const double obj_x = evaluate(x, false);
    if (obj_x < best_obj) {
      best_obj = obj_x;
      best = x;
    }
    // Adaptive restart: drop momentum when the objective goes up.
    if (obj_x > prev_obj) {
      momentum = 1.0;
      look = x;
    }
    prev_obj = obj_x;

    evaluate(look, true);
    double gmax = 0.0;
    for (double g : grad) gmax = std::max(gmax, std::abs(g));
    if (gmax <= config.tolerance) {
      out.converged = true;
      if (evaluate(look, false) < best_obj) best = look;
      break;
    }
    x_prev = x;
    for (std::size_t j = 0; j <= m; ++j) x[j] = look[j] - step * grad[j];
    const double next_momentum =
        0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    const double beta = (momentum - 1.0) / next_momentum;
    momentum = next_momentum;
    for (std::size_t j = 0; j <= m; ++j) look[j] = x[j] + beta * (x[j] - x_prev[j]);
  }
  if (!out.converged) {
    const double final_obj = evaluate(x, false);
    if (final_obj < best_obj) best = x;
  }

  double bias = best[m];
  best.resize(m);
  out.classifier = KernelClassifier(design.basis, std::move(best), bias);
  out.predictions = BitVector(n);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int p =
        out.classifier.decision_from_kernel(design.row(i)) >= 0.0 ? 1 : -1;
    out.predictions.set(i, p);
    agree += p == targets[i];
  }
  out.accuracy = static_cast<double>(agree) * inv_n;
  return out;
}

FitResult fit_bit_classifier(const Dataset& data, const BitVector& targets,
                             const KernelConfig& config) {
  return fit_bit_classifier(make_design(data, make_kernel_basis(data, config)),
                            targets, config);
}

}  // namespace ppc
