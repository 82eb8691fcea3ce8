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
#include <string>
#include <vector>

#include "core/affinity.hpp"
#include "core/hamming_index.hpp"

namespace ppc {

struct PRPoint {
  double alpha = 0.0;
  double precision = 1.0;
  double recall = 0.0;
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;
};

/// One point per achievable threshold alpha = 0, 2, ..., 2p, over unordered
/// pairs. Precision is 1 when nothing is retrieved.
struct PRCurve {
  std::vector<PRPoint> points;
};

/// Throws kValidation when there are no near pairs.
PRCurve precision_recall(const PackedCodes& codes, const ProximityLabels& labels);

/// Trapezoidal area under precision over recall, with the curve extended to
/// recall 0 at the precision of the smallest threshold.
double auc(const PRCurve& curve);

struct JointHistogram {
  std::size_t bins = 0;
  std::size_t bits = 0;
  double min_distance = 0.0;
  double bin_width = 0.0;
  /// bins x (bits + 1), column h counts pairs with Hamming distance 2h.
  std::vector<std::uint64_t> counts;

  std::uint64_t at(std::size_t bin, std::size_t half_hamming) const {
    return counts[bin * (bits + 1) + half_hamming];
  }
  double bin_center(std::size_t bin) const {
    return min_distance + (static_cast<double>(bin) + 0.5) * bin_width;
  }
  /// Bin of a feature distance, clamped to the observed range.
  std::size_t bin_of(double distance) const;
};

/// Pair counts over equal-width feature-distance bins and Hamming distances.
JointHistogram joint_histogram(const PackedCodes& codes, const Dataset& data,
                               Metric metric, std::size_t bins);

void write_pr_csv(const PRCurve& curve, const std::string& path);
void write_histogram_csv(const JointHistogram& hist, const std::string& path);

}  // namespace ppc
