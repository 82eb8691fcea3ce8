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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "core/affinity.hpp"
#include "core/error.hpp"
#include "support/oracles.hpp"

namespace {

using ppc::Dataset;

Dataset make(std::size_t d, std::vector<double> f,
             std::optional<std::vector<std::int64_t>> labels = std::nullopt) {
  Dataset ds;
  ds.d = d;
  ds.n = f.size() / d;
  ds.features = std::move(f);
  ds.class_labels = std::move(labels);
  for (std::size_t i = 0; i < ds.n; ++i) ds.ids.push_back(std::to_string(i));
  return ds;
}

void expect_partition(const ppc::ProximityLabels& l) {
  const std::uint64_t n = l.n();
  EXPECT_EQ(l.pair_count(), n * (n - 1) / 2);
  EXPECT_EQ(l.near_count() + l.far_count(), l.pair_count());
  std::uint64_t near = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      near += l.near(i, j);
      EXPECT_EQ(l.near(i, j), l.near(j, i));
    }
  }
  EXPECT_EQ(near, l.near_count());
}

TEST(LabelsByClass, Examples) {
  const auto l = ppc::labels_by_class(make(1, {0, 0, 0}, {{0, 0, 1}}));
  EXPECT_EQ(l.label(0, 1), 1);
  EXPECT_EQ(l.label(0, 2), -1);
  EXPECT_EQ(l.label(1, 2), -1);

  const auto same = ppc::labels_by_class(make(1, {0, 1, 2, 3}, {{5, 5, 5, 5}}));
  EXPECT_EQ(same.near_count(), 6u);
  EXPECT_EQ(same.far_count(), 0u);

  const auto distinct = ppc::labels_by_class(make(1, {0, 1, 2, 3}, {{0, 1, 2, 3}}));
  EXPECT_EQ(distinct.near_count(), 0u);
  EXPECT_EQ(distinct.far_count(), 6u);
}

TEST(LabelsByClass, MissingLabelsThrow) {
  EXPECT_THROW(ppc::labels_by_class(make(1, {0, 1})), ppc::Error);
}

TEST(LabelsByRadius, Examples) {
  const auto l = ppc::labels_by_radius(make(1, {0, 1, 5}), 2.0, ppc::Metric::kEuclidean);
  EXPECT_EQ(l.label(0, 1), 1);
  EXPECT_EQ(l.label(0, 2), -1);
  EXPECT_EQ(l.label(1, 2), -1);

  const auto all = ppc::labels_by_radius(make(1, {0, 1, 5, 2}), 100.0, ppc::Metric::kEuclidean);
  EXPECT_EQ(all.near_count(), 6u);

  const auto boundary = ppc::labels_by_radius(make(2, {0, 0, 3, 4}), 5.0, ppc::Metric::kEuclidean);
  EXPECT_EQ(boundary.label(0, 1), 1);
}

TEST(LabelsByRadius, L1Metric) {
  const auto l = ppc::labels_by_radius(make(2, {0, 0, 3, 4}), 6.9, ppc::Metric::kL1);
  EXPECT_EQ(l.label(0, 1), -1);
  EXPECT_EQ(ppc::labels_by_radius(make(2, {0, 0, 3, 4}), 7.0, ppc::Metric::kL1).label(0, 1), 1);
}

TEST(LabelsByRadius, PartitionAndMonotonicity) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto data = ppc::synth_2d(40, seed, 1.0);
    ppc::ProximityLabels prev;
    for (double r : {0.0, 0.1, 0.3, 0.7, 1.5, 3.0}) {
      const auto l = ppc::labels_by_radius(data, r, ppc::Metric::kEuclidean);
      expect_partition(l);
      if (prev.n() > 0) {
        for (std::size_t i = 0; i < 40; ++i) {
          for (std::size_t j = i + 1; j < 40; ++j) {
            if (prev.near(i, j)) {
              EXPECT_TRUE(l.near(i, j));
            }
          }
        }
      }
      prev = l;
    }
  }
}

TEST(RadiusForAvgNeighbors, Examples) {
  const auto data = make(1, {0, 1, 3});
  const auto c = ppc::radius_for_avg_neighbors(data, 4.0 / 3.0, ppc::Metric::kEuclidean);
  EXPECT_EQ(c.radius, 2.0);
  EXPECT_NEAR(c.achieved_avg_neighbors, 4.0 / 3.0, 1e-15);

  const auto top = ppc::radius_for_avg_neighbors(data, 2.0 - 1e-9, ppc::Metric::kEuclidean);
  EXPECT_EQ(top.radius, 3.0);

  const auto dup = make(1, {0, 0, 5, 9});
  const auto z = ppc::radius_for_avg_neighbors(dup, 0.4, ppc::Metric::kEuclidean);
  EXPECT_EQ(z.radius, 0.0);
  EXPECT_TRUE(ppc::labels_by_radius(dup, z.radius, ppc::Metric::kEuclidean).near(0, 1));
}

TEST(RadiusForAvgNeighbors, RangeChecked) {
  const auto data = make(1, {0, 1, 3});
  EXPECT_THROW(ppc::radius_for_avg_neighbors(data, 0.0, ppc::Metric::kEuclidean), ppc::Error);
  EXPECT_THROW(ppc::radius_for_avg_neighbors(data, 2.0, ppc::Metric::kEuclidean), ppc::Error);
}

TEST(RadiusForAvgNeighbors, AchievesTargetWithinRounding) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 100 + seed * 17;
    const auto data = ppc::synth_2d(n, seed, 0.5);
    for (double target : {1.0, 5.5, 30.0}) {
      const auto c = ppc::radius_for_avg_neighbors(data, target, ppc::Metric::kEuclidean);
      const auto l = ppc::labels_by_radius(data, c.radius, ppc::Metric::kEuclidean);
      const double avg = 2.0 * static_cast<double>(l.near_count()) / static_cast<double>(n);
      EXPECT_NEAR(avg, c.achieved_avg_neighbors, 1e-12);
      EXPECT_LE(std::abs(avg - target), 2.0 / static_cast<double>(n) + 1e-12);
    }
  }
}

TEST(MakeLabels, Dispatch) {
  const auto data = make(1, {0, 1, 5}, {{0, 0, 1}});
  ppc::AffinityConfig cls;
  EXPECT_EQ(ppc::make_labels(data, cls).near_count(), 1u);
  ppc::AffinityConfig rad;
  rad.mode = ppc::AffinityMode::kByRadius;
  rad.radius = 4.5;
  EXPECT_EQ(ppc::make_labels(data, rad).near_count(), 2u);
  rad.target_avg_neighbors = 2.0 / 3.0;
  EXPECT_EQ(ppc::make_labels(data, rad).near_count(), 1u);
  rad.target_avg_neighbors.reset();
  rad.radius = -1.0;
  EXPECT_THROW(ppc::make_labels(data, rad), ppc::Error);
}

TEST(Synth2d, Examples) {
  const auto a = ppc::synth_2d(300, 7, 0.5);
  EXPECT_EQ(a.n, 300u);
  EXPECT_EQ(a.d, 2u);
  for (double v : a.features) {
    EXPECT_GE(v, -0.5);
    EXPECT_LE(v, 0.5);
  }
  EXPECT_EQ(a.features, ppc::synth_2d(300, 7, 0.5).features);
  EXPECT_NE(ppc::synth_2d(2, 1, 1.0).features, ppc::synth_2d(2, 2, 1.0).features);
  const auto origin = ppc::synth_2d(5, 1, 0.0);
  EXPECT_TRUE(std::all_of(origin.features.begin(), origin.features.end(),
                          [](double v) { return v == 0.0; }));
}

TEST(SynthBlobs, ShapeAndBalance) {
  ppc::BlobSpec spec;
  spec.n = 103;
  spec.dim = 3;
  spec.blobs = 4;
  const auto d = ppc::synth_blobs(spec, 5);
  EXPECT_EQ(d.n, 103u);
  EXPECT_EQ(d.d, 3u);
  ASSERT_TRUE(d.class_labels.has_value());
  std::vector<int> counts(4, 0);
  for (auto c : *d.class_labels) ++counts[static_cast<std::size_t>(c)];
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  EXPECT_LE(*hi - *lo, 1);
  EXPECT_EQ(d.features, ppc::synth_blobs(spec, 5).features);
}

TEST(Dataset, ValidationRejectsNonFinite) {
  auto d = make(1, {0, NAN});
  EXPECT_THROW(d.validate(), ppc::Error);
  auto e = make(1, {0, 1}, {{0}});
  EXPECT_THROW(e.validate(), ppc::Error);
}

TEST(SliceRows, CarriesLabelsAndIds) {
  const auto d = make(1, {0, 1, 2, 3}, {{4, 5, 6, 7}});
  const auto s = ppc::slice_rows(d, 1, 2);
  EXPECT_EQ(s.features, (std::vector<double>{1, 2}));
  EXPECT_EQ(*s.class_labels, (std::vector<std::int64_t>{5, 6}));
  EXPECT_EQ(s.ids, (std::vector<std::string>{"1", "2"}));
  EXPECT_THROW(ppc::slice_rows(d, 3, 2), ppc::Error);
}

TEST(PairIndex, RowMajorUpperTriangle) {
  ppc::ProximityLabels l(5);
  std::uint64_t expected = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) EXPECT_EQ(l.pair_index(i, j), expected++);
  }
}

}  // namespace
