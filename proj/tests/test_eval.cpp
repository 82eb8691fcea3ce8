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

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "core/error.hpp"
#include "core/eval.hpp"
#include "core/hamming_index.hpp"
#include "support/oracles.hpp"

namespace {

using ppc::PackedCodes;
using ppc::ProximityLabels;

// Class labels c[i]; the code of point i is all +1 for even classes and all
// -1 for odd ones, so with two classes near pairs sit at 0 and far at 2p.
struct Fixture {
  PackedCodes codes;
  ProximityLabels labels;
};

Fixture perfect(std::size_t n, std::size_t p) {
  Fixture f{PackedCodes(n, p), ProximityLabels(n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t b = 0; b < p; ++b) f.codes.set_bit(i, b, i % 2 == 0 ? 1 : -1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) f.labels.set_near(i, j, i % 2 == j % 2);
  }
  return f;
}

ProximityLabels random_labels(std::size_t n, double rate, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution coin(rate);
  ProximityLabels l(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) l.set_near(i, j, coin(gen));
  }
  return l;
}

TEST(PrecisionRecall, PerfectCodes) {
  const auto f = perfect(30, 8);
  const auto curve = ppc::precision_recall(f.codes, f.labels);
  ASSERT_EQ(curve.points.size(), 9u);
  for (std::size_t t = 0; t < curve.points.size(); ++t) {
    const auto& pt = curve.points[t];
    EXPECT_DOUBLE_EQ(pt.alpha, 2.0 * t);
    if (pt.alpha < 16) {
      EXPECT_DOUBLE_EQ(pt.precision, 1.0);
      EXPECT_DOUBLE_EQ(pt.recall, 1.0);
    }
  }
  const auto& last = curve.points.back();
  EXPECT_DOUBLE_EQ(last.recall, 1.0);
  EXPECT_DOUBLE_EQ(last.precision, static_cast<double>(f.labels.near_count()) /
                                       static_cast<double>(f.labels.pair_count()));
  EXPECT_NEAR(ppc::auc(curve), 1.0, 1e-9);
}

TEST(PrecisionRecall, MatchesPairwiseOracle) {
  const std::size_t n = 60, p = 6;
  const auto codes = ppc::random_codes(n, p, 3);
  const auto labels = random_labels(n, 0.3, 4);
  const auto curve = ppc::precision_recall(codes, labels);
  for (const auto& pt : curve.points) {
    std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        int d = 0;
        for (std::size_t b = 0; b < p; ++b) d += codes.bit(i, b) != codes.bit(j, b) ? 2 : 0;
        const bool hit = d <= pt.alpha;
        const bool near = labels.near(i, j);
        tp += hit && near;
        fp += hit && !near;
        fn += !hit && near;
        tn += !hit && !near;
      }
    }
    EXPECT_EQ(pt.tp, tp);
    EXPECT_EQ(pt.fp, fp);
    EXPECT_EQ(pt.fn, fn);
    EXPECT_EQ(pt.tn, tn);
    EXPECT_DOUBLE_EQ(pt.precision, tp + fp == 0 ? 1.0 : double(tp) / double(tp + fp));
    EXPECT_DOUBLE_EQ(pt.recall, double(tp) / double(tp + fn));
  }
}

TEST(PrecisionRecall, RandomOneBitCodesHitBaseRate) {
  const std::size_t n = 400;
  const auto codes = ppc::random_codes(n, 1, 11);
  const auto labels = random_labels(n, 0.5, 12);
  const auto curve = ppc::precision_recall(codes, labels);
  const auto& pt = curve.points[0];
  const double retrieved = static_cast<double>(pt.tp + pt.fp);
  const double sigma = std::sqrt(0.25 / retrieved);
  EXPECT_NEAR(pt.precision, 0.5, 3 * sigma);
}

TEST(PrecisionRecall, ConservationAndMonotonicity) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 25 + seed;
    const auto codes = ppc::random_codes(n, 1 + seed % 9, seed);
    const auto labels = random_labels(n, 0.1 + 0.04 * seed, seed + 100);
    if (labels.near_count() == 0) continue;
    const auto curve = ppc::precision_recall(codes, labels);
    const std::uint64_t total = n * (n - 1) / 2;
    for (std::size_t t = 0; t < curve.points.size(); ++t) {
      const auto& pt = curve.points[t];
      EXPECT_EQ(pt.tp + pt.fp + pt.fn + pt.tn, total);
      EXPECT_GE(pt.precision, 0.0);
      EXPECT_LE(pt.precision, 1.0);
      if (t > 0) {
        const auto& prev = curve.points[t - 1];
        EXPECT_GE(pt.recall, prev.recall);
        EXPECT_GE(pt.tp, prev.tp);
        EXPECT_GE(pt.fp, prev.fp);
      }
    }
    const double a = ppc::auc(curve);
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
  }
}

TEST(PrecisionRecall, NoNearPairsIsAnError) {
  const ProximityLabels labels(10);
  try {
    ppc::precision_recall(ppc::random_codes(10, 4, 1), labels);
    FAIL();
  } catch (const ppc::Error& e) {
    EXPECT_EQ(e.code(), ppc::ErrorCode::kValidation);
  }
}

TEST(Auc, ConstantPrecisionIsRectangle) {
  ppc::PRCurve curve;
  for (int t = 0; t <= 10; ++t) {
    ppc::PRPoint pt;
    pt.alpha = 2 * t;
    pt.recall = t / 10.0;
    pt.precision = 0.37;
    curve.points.push_back(pt);
  }
  EXPECT_NEAR(ppc::auc(curve), 0.37, 1e-12);
}

TEST(Auc, ExtendsToRecallZero) {
  ppc::PRCurve curve;
  ppc::PRPoint a;
  a.recall = 0.5;
  a.precision = 0.8;
  ppc::PRPoint b;
  b.recall = 1.0;
  b.precision = 0.4;
  curve.points = {a, b};
  EXPECT_NEAR(ppc::auc(curve), 0.5 * 0.8 + 0.5 * 0.6, 1e-12);
  EXPECT_THROW(ppc::auc(ppc::PRCurve{}), ppc::Error);
}

ppc::Dataset line_data(std::size_t n) {
  ppc::Dataset d;
  d.n = n;
  d.d = 1;
  for (std::size_t i = 0; i < n; ++i) d.features.push_back(static_cast<double>(i * i));
  return d;
}

TEST(JointHistogram, IdenticalCodesFillColumnZero) {
  const std::size_t n = 15, p = 5;
  PackedCodes codes(n, p);
  for (std::size_t i = 0; i < n; ++i) codes.set_bit(i, 2, -1);
  const auto h = ppc::joint_histogram(codes, line_data(n), ppc::Metric::kEuclidean, 7);
  std::uint64_t total = 0;
  for (std::size_t b = 0; b < h.bins; ++b) {
    for (std::size_t c = 0; c <= p; ++c) {
      total += h.at(b, c);
      if (c > 0) {
        EXPECT_EQ(h.at(b, c), 0u);
      }
    }
  }
  EXPECT_EQ(total, n * (n - 1) / 2);
}

TEST(JointHistogram, SinglePairOneCell) {
  auto codes = ppc::random_codes(2, 9, 5);
  const auto h = ppc::joint_histogram(codes, line_data(2), ppc::Metric::kEuclidean, 4);
  int nonzero = 0;
  for (auto c : h.counts) nonzero += c != 0;
  EXPECT_EQ(nonzero, 1);
  const int d = ppc::hamming(codes.code(0), codes.code(1));
  std::uint64_t col = 0;
  for (std::size_t b = 0; b < h.bins; ++b) col += h.at(b, static_cast<std::size_t>(d / 2));
  EXPECT_EQ(col, 1u);
}

TEST(JointHistogram, MatchesBinOracle) {
  const std::size_t n = 40, p = 7, bins = 6;
  const auto codes = ppc::random_codes(n, p, 9);
  const auto data = line_data(n);
  const auto h = ppc::joint_histogram(codes, data, ppc::Metric::kEuclidean, bins);
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::abs(data.features[i] - data.features[j]);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  }
  std::vector<std::uint64_t> ref(bins * (p + 1), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::abs(data.features[i] - data.features[j]);
      auto bin = static_cast<std::size_t>((d - lo) / ((hi - lo) / bins));
      if (bin >= bins) bin = bins - 1;
      int hd = 0;
      for (std::size_t b = 0; b < p; ++b) hd += codes.bit(i, b) != codes.bit(j, b);
      ref[bin * (p + 1) + hd] += 1;
    }
  }
  EXPECT_EQ(h.counts, ref);
}

TEST(Csv, HeadersAndRows) {
  const auto dir = oracle::temp_dir("eval_csv");
  const auto f = perfect(10, 3);
  const auto curve = ppc::precision_recall(f.codes, f.labels);
  ppc::write_pr_csv(curve, (dir / "pr.csv").string());
  std::istringstream pr(oracle::read_file(dir / "pr.csv"));
  std::string line;
  std::getline(pr, line);
  EXPECT_EQ(line, "alpha,precision,recall,tp,fp,fn,tn");
  int rows = 0;
  while (std::getline(pr, line)) ++rows;
  EXPECT_EQ(rows, 4);

  const auto h = ppc::joint_histogram(f.codes, line_data(10), ppc::Metric::kL1, 3);
  ppc::write_histogram_csv(h, (dir / "hist.csv").string());
  std::istringstream hist(oracle::read_file(dir / "hist.csv"));
  std::getline(hist, line);
  EXPECT_EQ(line, "dist_bin,hamming,count,log_count");
  rows = 0;
  while (std::getline(hist, line)) ++rows;
  EXPECT_EQ(rows, 3 * 4);
  std::filesystem::remove_all(dir);
}

}  // namespace
