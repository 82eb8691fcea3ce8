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

#include "core/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "core/error.hpp"

namespace ppc {

PRCurve precision_recall(const PackedCodes& codes, const ProximityLabels& labels) {
  require(codes.size() == labels.n(), "codes and labels disagree on point count");
  require(labels.near_count() > 0, "precision-recall needs at least one near pair",
          ErrorCode::kValidation);
  const std::size_t n = codes.size();
  const std::size_t p = codes.bits();
  // Histogram of half-distances per label, then cumulative sums.
  std::vector<std::uint64_t> near(p + 1, 0), far(p + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ci = codes.code(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto h = static_cast<std::size_t>(hamming(ci, codes.code(j)) / 2);
      (labels.near(i, j) ? near : far)[h] += 1;
    }
  }
  const std::uint64_t near_total = labels.near_count();
  const std::uint64_t far_total = labels.far_count();
  PRCurve curve;
  std::uint64_t tp = 0, fp = 0;
  for (std::size_t h = 0; h <= p; ++h) {
    tp += near[h];
    fp += far[h];
    PRPoint pt;
    pt.alpha = 2.0 * static_cast<double>(h);
    pt.tp = tp;
    pt.fp = fp;
    pt.fn = near_total - tp;
    pt.tn = far_total - fp;
    pt.precision = tp + fp == 0 ? 1.0
                                : static_cast<double>(tp) / static_cast<double>(tp + fp);
    pt.recall = static_cast<double>(tp) / static_cast<double>(near_total);
    curve.points.push_back(pt);
  }
  return curve;
}

double auc(const PRCurve& curve) {
  require(!curve.points.empty(), "AUC of an empty curve");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(curve.points.size() + 1);
  pts.emplace_back(0.0, curve.points.front().precision);
  for (const auto& p : curve.points) pts.emplace_back(p.recall, p.precision);
  std::stable_sort(pts.begin(), pts.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    area += (pts[i].first - pts[i - 1].first) * 0.5 *
            (pts[i].second + pts[i - 1].second);
  }
  return area;
}

std::size_t JointHistogram::bin_of(double distance) const {
  if (bin_width <= 0.0) return 0;
  const double pos = (distance - min_distance) / bin_width;
  if (pos <= 0.0) return 0;
  return std::min(bins - 1, static_cast<std::size_t>(pos));
}

JointHistogram joint_histogram(const PackedCodes& codes, const Dataset& data,
                               Metric metric, std::size_t bins) {
  require(codes.size() == data.n, "codes and data disagree on point count");
  require(bins >= 1, "histogram needs at least one bin");
  const std::size_t n = data.n;
  std::vector<double> dist;
  dist.reserve(n * (n > 0 ? n - 1 : 0) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist.push_back(distance(data.row(i), data.row(j), metric));
    }
  }
  JointHistogram hist;
  hist.bins = bins;
  hist.bits = codes.bits();
  hist.counts.assign(bins * (hist.bits + 1), 0);
  if (dist.empty()) return hist;
  const auto [lo, hi] = std::minmax_element(dist.begin(), dist.end());
  hist.min_distance = *lo;
  hist.bin_width = (*hi - *lo) / static_cast<double>(bins);
  std::size_t pair = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ci = codes.code(i);
    for (std::size_t j = i + 1; j < n; ++j, ++pair) {
      const auto h = static_cast<std::size_t>(hamming(ci, codes.code(j)) / 2);
      hist.counts[hist.bin_of(dist[pair]) * (hist.bits + 1) + h] += 1;
    }
  }
  return hist;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write file: " + path);
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_pr_csv(const PRCurve& curve, const std::string& path) {
  auto out = open_out(path);
  out << "alpha,precision,recall,tp,fp,fn,tn\n";
  for (const auto& p : curve.points) {
    out << fmt(p.alpha) << ',' << fmt(p.precision) << ',' << fmt(p.recall) << ','
        << p.tp << ',' << p.fp << ',' << p.fn << ',' << p.tn << '\n';
  }
  if (!out) fail(ErrorCode::kIo, "write failed: " + path);
}

void write_histogram_csv(const JointHistogram& hist, const std::string& path) {
  auto out = open_out(path);
  out << "dist_bin,hamming,count,log_count\n";
  for (std::size_t b = 0; b < hist.bins; ++b) {
    for (std::size_t h = 0; h <= hist.bits; ++h) {
      const auto c = hist.at(b, h);
      out << fmt(hist.bin_center(b)) << ',' << 2 * h << ',' << c << ','
          << fmt(std::log1p(static_cast<double>(c))) << '\n';
    }
  }
  if (!out) fail(ErrorCode::kIo, "write failed: " + path);
}

}  // namespace ppc
