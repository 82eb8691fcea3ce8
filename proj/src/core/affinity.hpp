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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ppc {

/// n feature vectors in d dimensions, row-major, with optional class ids.
struct Dataset {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> features;
  std::optional<std::vector<std::int64_t>> class_labels;
  std::vector<std::string> ids;

  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * d, d};
  }

  /// Checks shape consistency and finiteness. Throws kValidation.
  void validate(std::size_t min_rows = 1) const;
};

enum class Metric { kEuclidean, kL1 };

double distance(std::span<const double> a, std::span<const double> b,
                Metric metric);

/// Near/Far labeling of every unordered pair i < j, packed one bit per pair.
class ProximityLabels {
 public:
  ProximityLabels() = default;
  explicit ProximityLabels(std::size_t n);

  std::size_t n() const { return n_; }
  std::uint64_t pair_count() const { return pair_count_; }
  std::uint64_t near_count() const { return near_count_; }
  std::uint64_t far_count() const { return pair_count_ - near_count_; }

  /// Index of the unordered pair (i, j), i != j, in row-major upper
  /// triangular order.
  std::uint64_t pair_index(std::size_t i, std::size_t j) const;

  bool near(std::size_t i, std::size_t j) const;
  /// +1 for Near, -1 for Far.
  int label(std::size_t i, std::size_t j) const { return near(i, j) ? 1 : -1; }

  void set_near(std::size_t i, std::size_t j, bool is_near);

 private:
  std::size_t n_ = 0;
  std::uint64_t pair_count_ = 0;
  std::uint64_t near_count_ = 0;
  std::vector<std::uint64_t> bits_;
};

enum class AffinityMode { kByClass, kByRadius };

struct AffinityConfig {
  AffinityMode mode = AffinityMode::kByClass;
  double radius = 0.0;
  Metric metric = Metric::kEuclidean;
  /// When set in radius mode, the radius is derived from this target.
  std::optional<double> target_avg_neighbors;
};

ProximityLabels labels_by_class(const Dataset& data);

/// Pairs with distance <= radius are Near.
ProximityLabels labels_by_radius(const Dataset& data, double radius,
                                 Metric metric);

struct RadiusChoice {
  double radius = 0.0;
  double achieved_avg_neighbors = 0.0;
};

/// Picks r as the m-th smallest pairwise distance, m = round(n * target / 2),
/// so that the radius rule yields about `target_avg` neighbors per point.
RadiusChoice radius_for_avg_neighbors(const Dataset& data, double target_avg,
                                      Metric metric);

/// Dispatches on cfg.mode; radius mode honors target_avg_neighbors.
ProximityLabels make_labels(const Dataset& data, const AffinityConfig& cfg);

/// n points uniform in [-box, box]^2.
Dataset synth_2d(std::size_t n, std::uint64_t seed, double box);

struct BlobSpec {
  std::size_t n = 1000;
  std::size_t dim = 2;
  std::size_t blobs = 4;
  /// Blob centers are uniform in [-spread, spread]^dim.
  double spread = 5.0;
  /// Per-coordinate standard deviation within a blob.
  double sigma = 1.0;
};

/// Gaussian mixture with the blob index as class label. Points are assigned
/// to blobs round-robin so class sizes differ by at most one.
Dataset synth_blobs(const BlobSpec& spec, std::uint64_t seed);

/// Rows [first, first + count) as a new dataset (labels and ids carried).
Dataset slice_rows(const Dataset& data, std::size_t first, std::size_t count);

}  // namespace ppc
