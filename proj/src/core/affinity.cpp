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

#include "core/affinity.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace ppc {

void Dataset::validate(std::size_t min_rows) const {
  require(n >= min_rows, "dataset needs at least " + std::to_string(min_rows) +
                             " rows, got " + std::to_string(n),
          ErrorCode::kValidation);
  require(d >= 1, "dataset needs at least one feature column",
          ErrorCode::kValidation);
  require(features.size() == n * d, "feature buffer does not match n*d",
          ErrorCode::kValidation);
  if (class_labels) {
    require(class_labels->size() == n, "class label count does not match n",
            ErrorCode::kValidation);
  }
  require(ids.empty() || ids.size() == n, "id count does not match n",
          ErrorCode::kValidation);
  for (std::size_t i = 0; i < n; ++i) {
    for (double v : row(i)) {
      if (!std::isfinite(v)) {
        fail(ErrorCode::kValidation,
             "non-finite feature value in row " + std::to_string(i));
      }
    }
  }
}

double distance(std::span<const double> a, std::span<const double> b,
                Metric metric) {
  double acc = 0.0;
  if (metric == Metric::kL1) {
    for (std::size_t t = 0; t < a.size(); ++t) acc += std::abs(a[t] - b[t]);
    return acc;
  }
  for (std::size_t t = 0; t < a.size(); ++t) {
    const double diff = a[t] - b[t];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

ProximityLabels::ProximityLabels(std::size_t n)
    : n_(n),
      pair_count_(static_cast<std::uint64_t>(n) * (n > 0 ? n - 1 : 0) / 2),
      bits_((pair_count_ + 63) / 64, 0) {}

std::uint64_t ProximityLabels::pair_index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  const std::uint64_t a = i;
  return a * (2 * n_ - a - 1) / 2 + (j - i - 1);
}

bool ProximityLabels::near(std::size_t i, std::size_t j) const {
  const std::uint64_t k = pair_index(i, j);
  return (bits_[k >> 6] >> (k & 63)) & 1U;
}

void ProximityLabels::set_near(std::size_t i, std::size_t j, bool is_near) {
  const std::uint64_t k = pair_index(i, j);
  const std::uint64_t mask = std::uint64_t{1} << (k & 63);
  const bool was = bits_[k >> 6] & mask;
  if (was == is_near) return;
  if (is_near) {
    bits_[k >> 6] |= mask;
    ++near_count_;
  } else {
    bits_[k >> 6] &= ~mask;
    --near_count_;
  }
}

ProximityLabels labels_by_class(const Dataset& data) {
  require(data.class_labels.has_value(),
          "class affinity requested but the dataset has no class labels");
  require(data.n >= 2, "affinity needs at least two points");
  const auto& cls = *data.class_labels;
  ProximityLabels labels(data.n);
  for (std::size_t i = 0; i < data.n; ++i) {
    for (std::size_t j = i + 1; j < data.n; ++j) {
      if (cls[i] == cls[j]) labels.set_near(i, j, true);
    }
  }
  return labels;
}

ProximityLabels labels_by_radius(const Dataset& data, double radius,
                                 Metric metric) {
  require(radius >= 0.0 && std::isfinite(radius),
          "radius must be finite and non-negative");
  require(data.n >= 2, "affinity needs at least two points");
  ProximityLabels labels(data.n);
  for (std::size_t i = 0; i < data.n; ++i) {
    for (std::size_t j = i + 1; j < data.n; ++j) {
      if (distance(data.row(i), data.row(j), metric) <= radius) {
        labels.set_near(i, j, true);
      }
    }
  }
  return labels;
}

RadiusChoice radius_for_avg_neighbors(const Dataset& data, double target_avg,
                                      Metric metric) {
  require(data.n >= 2, "affinity needs at least two points");
  const double n = static_cast<double>(data.n);
  require(target_avg > 0.0 && target_avg < n - 1.0,
          "target average neighbor count must lie in (0, n-1)");
  std::vector<double> dists;
  dists.reserve(data.n * (data.n - 1) / 2);
  for (std::size_t i = 0; i < data.n; ++i) {
    for (std::size_t j = i + 1; j < data.n; ++j) {
      dists.push_back(distance(data.row(i), data.row(j), metric));
    }
  }
  const auto pairs = static_cast<std::int64_t>(dists.size());
  auto m = static_cast<std::int64_t>(std::llround(n * target_avg / 2.0));
  m = std::clamp<std::int64_t>(m, 1, pairs);
  std::nth_element(dists.begin(), dists.begin() + (m - 1), dists.end());
  RadiusChoice out;
  out.radius = dists[static_cast<std::size_t>(m - 1)];
  const auto near = std::count_if(dists.begin(), dists.end(),
                                  [&](double v) { return v <= out.radius; });
  out.achieved_avg_neighbors = 2.0 * static_cast<double>(near) / n;
  return out;
}

ProximityLabels make_labels(const Dataset& data, const AffinityConfig& cfg) {
  if (cfg.mode == AffinityMode::kByClass) return labels_by_class(data);
  double radius = cfg.radius;
  if (cfg.target_avg_neighbors) {
    radius =
        radius_for_avg_neighbors(data, *cfg.target_avg_neighbors, cfg.metric)
            .radius;
  } else {
    require(radius > 0.0, "radius affinity needs a positive radius");
  }
  return labels_by_radius(data, radius, cfg.metric);
}

namespace {

void fill_ids(Dataset& data) {
  data.ids.resize(data.n);
  for (std::size_t i = 0; i < data.n; ++i) data.ids[i] = std::to_string(i);
}

}  // namespace

Dataset synth_2d(std::size_t n, std::uint64_t seed, double box) {
  require(n >= 2, "synth_2d needs n >= 2");
  require(box >= 0.0 && std::isfinite(box), "box half-width must be >= 0");
  Rng rng(derive_seed(seed, "synth-2d"));
  Dataset data;
  data.n = n;
  data.d = 2;
  data.features.resize(2 * n);
  for (double& v : data.features) v = rng.uniform(-box, box);
  fill_ids(data);
  return data;
}

Dataset synth_blobs(const BlobSpec& spec, std::uint64_t seed) {
  require(spec.n >= 2, "synth_blobs needs n >= 2");
  require(spec.dim >= 1 && spec.blobs >= 1, "blob dimension and count >= 1");
  require(spec.sigma >= 0.0 && spec.spread >= 0.0,
          "blob spread and sigma must be non-negative");
  Rng center_rng(derive_seed(seed, "blob-centers"));
  std::vector<double> centers(spec.blobs * spec.dim);
  for (double& c : centers) c = center_rng.uniform(-spec.spread, spec.spread);

  Rng rng(derive_seed(seed, "blob-points"));
  Dataset data;
  data.n = spec.n;
  data.d = spec.dim;
  data.features.resize(spec.n * spec.dim);
  data.class_labels.emplace(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const std::size_t blob = i % spec.blobs;
    (*data.class_labels)[i] = static_cast<std::int64_t>(blob);
    for (std::size_t t = 0; t < spec.dim; ++t) {
      data.features[i * spec.dim + t] =
          centers[blob * spec.dim + t] + spec.sigma * rng.normal();
    }
  }
  fill_ids(data);
  return data;
}

Dataset slice_rows(const Dataset& data, std::size_t first, std::size_t count) {
  require(first + count <= data.n, "row slice out of range");
  Dataset out;
  out.n = count;
  out.d = data.d;
  out.features.assign(data.features.begin() + first * data.d,
                      data.features.begin() + (first + count) * data.d);
  if (data.class_labels) {
    out.class_labels.emplace(data.class_labels->begin() + first,
                             data.class_labels->begin() + first + count);
  }
  if (!data.ids.empty()) {
    out.ids.assign(data.ids.begin() + first,
                   data.ids.begin() + first + count);
  }
  return out;
}

}  // namespace ppc
