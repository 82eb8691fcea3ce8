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


// Acceptance suite: one PASS/FAIL line per criterion, with timings. Reference
// quantities come from the oracles in support/, not from the library.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "core/affinity.hpp"
#include "core/eval.hpp"
#include "core/hamming_index.hpp"
#include "core/hashing.hpp"
#include "core/signed_cut.hpp"
#include "core/trainer.hpp"
#include "support/oracles.hpp"
#include "support/util.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

bool report(int id, const char* name, double limit_s,
            const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double s = seconds_since(t0);
  const bool in_time = s < limit_s;
  const bool pass = out.pass && in_time;
  std::printf("criterion %d %s: %s (%s; %.2f s of %.0f s)\n", id, name,
              pass ? "PASS" : "FAIL", out.detail.c_str(), s, limit_s);
  std::fflush(stdout);
  return pass;
}

oracle::Signs random_signs(std::size_t n, std::mt19937_64& gen) {
  oracle::Signs b(n);
  for (auto& v : b) v = (gen() & 1u) ? 1 : -1;
  return b;
}

double gershgorin_shift(const oracle::Matrix& w) {
  double lo = INFINITY;
  for (std::size_t i = 0; i < w.size(); ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (j != i) r += std::abs(w[i][j]);
    }
    lo = std::min(lo, w[i][i] - r);
  }
  return std::max(0.0, -lo);
}

bool one_flip_optimal(const oracle::Matrix& w, const oracle::Signs& b) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (j != i) s += w[i][j] * b[j];
    }
    if (-4.0 * b[i] * s > 0.0) return false;
  }
  return true;
}

// Criterion 1: monotone vector iterates, PSD shift, 1-flip optimality and
// diagonal invariance of bit trajectories.
Outcome theorem_suite() {
  int bad_a = 0, bad_b = 0, bad_c = 0, bad_d = 0;
  std::mt19937_64 gen(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 4 + static_cast<std::size_t>(t) % 29;
    const auto wm = oracle::random_symmetric(n, 1000 + t, true, false);
    const auto w = testutil::to_w(wm);
    const auto b0 = random_signs(n, gen);

    const double shift = gershgorin_shift(wm);
    auto shifted = wm;
    for (std::size_t i = 0; i < n; ++i) shifted[i][i] += shift;
    std::vector<double> values{oracle::quad(shifted, b0)};
    ppc::SolverOptions vopt;
    vopt.on_iterate = [&](const ppc::BitVector& b) {
      values.push_back(oracle::quad(shifted, testutil::signs(b)));
    };
    ppc::vector_update(w, testutil::bits(b0), vopt);
    for (std::size_t k = 1; k < values.size(); ++k) {
      if (values[k] < values[k - 1]) {
        ++bad_a;
        break;
      }
    }

    const auto ps = ppc::psd_shift(w);
    bool psd = ps.shift == shift;
    const auto sm = testutil::to_matrix(ps.matrix);
    std::normal_distribution<double> normal;
    for (int r = 0; r < 200 && psd; ++r) {
      std::vector<double> x(n);
      double norm2 = 0.0;
      for (auto& v : x) {
        v = normal(gen);
        norm2 += v * v;
      }
      double q = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) q += x[i] * sm[i][j] * x[j];
      }
      psd = q >= -1e-9 * norm2 * (1.0 + shift);
    }
    psd = psd && oracle::min_eigenvalue(sm) >= -1e-9 * (1.0 + shift);
    if (!psd) ++bad_b;

    std::vector<std::pair<std::size_t, oracle::Signs>> base_traj;
    ppc::SolverOptions bopt;
    bopt.on_bit_step = [&](std::size_t i, const ppc::BitVector& b) {
      base_traj.emplace_back(i, testutil::signs(b));
    };
    const auto [out, rep] = ppc::bit_update(w, testutil::bits(b0), bopt);
    if (!one_flip_optimal(wm, testutil::signs(out))) ++bad_c;

    for (double c : {-5.0, 3.0, 1e6}) {
      auto wc = wm;
      for (std::size_t i = 0; i < n; ++i) wc[i][i] += c;
      std::vector<std::pair<std::size_t, oracle::Signs>> traj;
      ppc::SolverOptions copt;
      copt.on_bit_step = [&](std::size_t i, const ppc::BitVector& b) {
        traj.emplace_back(i, testutil::signs(b));
      };
      const auto [out_c, rep_c] = ppc::bit_update(testutil::to_w(wc), testutil::bits(b0), copt);
      if (traj != base_traj || !(out_c == out)) {
        ++bad_d;
        break;
      }
    }
  }
  return {bad_a + bad_b + bad_c + bad_d == 0,
          format("violations: monotone %d, psd %d, 1-flip %d, diagonal %d over 200 matrices",
                 bad_a, bad_b, bad_c, bad_d)};
}

// Criterion 2: best-of-32 random bit_update against plain enumeration.
Outcome oracle_equivalence() {
  int good = 0, exceeded = 0;
  double worst = 1.0;
  for (int t = 0; t < 100; ++t) {
    const auto wm = oracle::random_symmetric(12, 5000 + t);
    const auto ref = oracle::enumerate(wm);
    ppc::TrainConfig cfg;
    cfg.solver = ppc::UpdateScheme::kBit;
    cfg.init = ppc::InitMethod::kRandom;
    cfg.restarts = 32;
    const auto sol = ppc::solve_cut(testutil::to_w(wm), cfg, 77 + t);
    const double value = oracle::quad(wm, testutil::signs(sol.bits));
    if (value > ref.best + 1e-9 * std::abs(ref.best)) ++exceeded;
    const double normalized = (value - ref.mean) / (ref.best - ref.mean);
    worst = std::min(worst, normalized);
    if (normalized >= 0.95) ++good;
  }
  return {good >= 90 && exceeded == 0,
          format("%d/100 at >= 0.95 of optimum (worst %.4f), exceeded %d", good, worst,
                 exceeded)};
}

// Criterion 3: exact integer and analytic identities of the trainer.
Outcome formula_checks() {
  ppc::BlobSpec spec;
  spec.n = 500;
  spec.dim = 3;
  spec.blobs = 5;
  spec.sigma = 1.5;
  const auto data = ppc::synth_blobs(spec, 31);
  const auto labels = ppc::make_labels(
      data, {ppc::AffinityMode::kByRadius, 0.0, ppc::Metric::kEuclidean, 40.0});
  const auto near = [&](std::size_t i, std::size_t j) { return labels.near(i, j); };

  std::string detail;
  bool ok = true;

  // Margin zero: empty code, beta = 0.
  const ppc::TrainerState fresh(data.n);
  const auto w0 = ppc::weight_matrix(labels, fresh);
  std::size_t bad_w = 0;
  for (std::size_t i = 0; i < data.n; ++i) {
    for (std::size_t j = 0; j < data.n; ++j) {
      const double want = i == j ? 0.0 : (near(std::min(i, j), std::max(i, j)) ? 0.5 : -0.5);
      if (w0(i, j) != want) ++bad_w;
    }
  }
  const double pairs = static_cast<double>(labels.pair_count());
  const double relaxed0 = ppc::relaxed_loss(labels, fresh, 0.0);
  const double per_pair_err = std::abs(relaxed0 / pairs - std::log(2.0));
  ok = ok && bad_w == 0 && per_pair_err <= 1e-12;
  detail += format("w(0) mismatches %zu, |L/pair - ln2| %.1e", bad_w, per_pair_err);

  ppc::TrainConfig cfg;
  cfg.max_bits = 48;
  cfg.seed = 3;
  std::size_t checked = 0, bad_alpha = 0, bad_gram = 0;
  const auto result = ppc::train(labels, cfg, [&](const ppc::BitRecord&) { ++checked; });
  const auto codes = testutil::columns(result.codes);
  const auto packed = ppc::pack(result.codes);
  const int p = static_cast<int>(result.codes.bits());
  for (std::size_t i = 0; i < data.n; ++i) {
    for (std::size_t j = 0; j < data.n; ++j) {
      const int dh = oracle::hamming(codes[i], codes[j]);
      if (result.state.gram(i, j) != p - dh || result.state.gram(i, j) != oracle::inner(codes[i], codes[j]) ||
          ppc::hamming(packed.code(i), packed.code(j)) != dh) {
        ++bad_gram;
      }
    }
  }

  // Full scan of the candidate grid on every prefix of the trained code.
  ppc::TrainerState state(data.n);
  for (int k = 1; k <= p; ++k) {
    ppc::accumulate(state, result.codes.bit_row(static_cast<std::size_t>(k - 1)));
    std::vector<oracle::Signs> prefix(data.n);
    for (std::size_t i = 0; i < data.n; ++i) prefix[i].assign(codes[i].begin(), codes[i].begin() + k);
    double best_alpha = 0.0;
    std::int64_t best_gap = -1;
    std::vector<std::uint64_t> near_hist(k + 1, 0), far_hist(k + 1, 0);
    for (std::size_t i = 0; i < data.n; ++i) {
      for (std::size_t j = i + 1; j < data.n; ++j) {
        (near(i, j) ? near_hist : far_hist)[oracle::hamming(prefix[i], prefix[j]) / 2] += 1;
      }
    }
    for (int a = -1; a <= 2 * k - 1; a += 2) {
      std::int64_t en = 0, ef = 0;
      for (int h = 0; h <= k; ++h) {
        if (2 * h > a) en += static_cast<std::int64_t>(near_hist[h]);
        if (2 * h <= a) ef += static_cast<std::int64_t>(far_hist[h]);
      }
      const std::int64_t gap = std::abs(en - ef);
      if (best_gap < 0 || gap < best_gap) {
        best_gap = gap;
        best_alpha = a;
      }
    }
    const auto choice = ppc::optimize_alpha(labels, state);
    const std::int64_t got_gap = std::abs(static_cast<std::int64_t>(choice.near_errors) -
                                          static_cast<std::int64_t>(choice.far_errors));
    if (choice.alpha != best_alpha || got_gap != best_gap || choice.beta != k - choice.alpha) {
      ++bad_alpha;
    }
  }
  ok = ok && bad_gram == 0 && bad_alpha == 0 && p >= 1 && p <= 64 &&
       checked == static_cast<std::size_t>(p);
  detail += format("; p=%d n=500: gram mismatches %zu, alpha scan mismatches %zu/%d", p,
                   bad_gram, bad_alpha, p);
  return {ok, detail};
}

// Criterion 4: random + bit_update against spectral inits and against
// vector_update on seeded blob mixtures. Every run emits exactly p bits so
// losses are compared at equal code length.
Outcome ablation() {
  const std::size_t p = 16;
  const std::size_t blob_counts[4] = {2, 4, 7, 10};
  const std::uint64_t seeds[3] = {1, 2, 3};
  const ppc::InitMethod spectral[3] = {ppc::InitMethod::kFiedler,
                                       ppc::InitMethod::kSignedLaplacian,
                                       ppc::InitMethod::kRandomProjection};
  int ratio_fail = 0, cells = 0, bit_wins = 0;
  double worst_ratio = 0.0, worst_cell = 0.0;
  for (std::size_t d = 0; d < 4; ++d) {
    ppc::BlobSpec spec;
    spec.n = 1000;
    spec.dim = 2;
    spec.blobs = blob_counts[d];
    spec.spread = 4.0;
    spec.sigma = 1.5;
    const auto data = ppc::synth_blobs(spec, 400 + d);
    const auto labels = ppc::make_labels(
        data, {ppc::AffinityMode::kByRadius, 0.0, ppc::Metric::kEuclidean, 50.0});
    // Per dataset, losses are averaged over seeds; the spectral inits other
    // than random-projection ignore the seed.
    double random_mean = 0.0;
    double spectral_mean[3] = {0.0, 0.0, 0.0};
    for (auto seed : seeds) {
      const auto final_loss = [&](ppc::InitMethod init, ppc::UpdateScheme solver) {
        ppc::TrainConfig cfg;
        cfg.max_bits = p;
        cfg.seed = seed;
        cfg.init = init;
        cfg.solver = solver;
        ppc::TrainerState state(data.n);
        double relaxed = 0.0;
        for (std::size_t k = 0; k < p; ++k) relaxed = ppc::train_bit(state, labels, cfg).loss.relaxed;
        return relaxed;
      };
      const double random_bit = final_loss(ppc::InitMethod::kRandom, ppc::UpdateScheme::kBit);
      const double random_vec = final_loss(ppc::InitMethod::kRandom, ppc::UpdateScheme::kVector);
      random_mean += random_bit / 3.0;
      std::string row = format("  blobs=%zu seed=%llu random+bit %.2f random+vector %.2f",
                               blob_counts[d], static_cast<unsigned long long>(seed),
                               random_bit, random_vec);
      for (std::size_t m = 0; m < 3; ++m) {
        const double loss = final_loss(spectral[m], ppc::UpdateScheme::kBit);
        spectral_mean[m] += loss / 3.0;
        worst_cell = std::max(worst_cell, random_bit / loss);
        row += format(" %s+bit %.2f", std::string(ppc::init_method_name(spectral[m])).c_str(),
                      loss);
      }
      std::printf("%s\n", row.c_str());
      ++cells;
      if (random_bit <= random_vec) ++bit_wins;
    }
    for (std::size_t m = 0; m < 3; ++m) {
      const double ratio = random_mean / spectral_mean[m];
      worst_ratio = std::max(worst_ratio, ratio);
      if (ratio > 1.02) ++ratio_fail;
      std::printf("  blobs=%zu mean random+bit / %s+bit = %.4f\n", blob_counts[d],
                  std::string(ppc::init_method_name(spectral[m])).c_str(), ratio);
    }
  }
  const bool ok = ratio_fail == 0 && bit_wins * 10 >= cells * 8;
  return {ok, format("worst per-dataset random/spectral ratio %.4f (%d of 12 over 1.02, "
                     "worst single cell %.4f); bit <= vector in %d/%d cells",
                     worst_ratio, ratio_fail, worst_cell, bit_wins, cells)};
}

// Criterion 5: near mass left of alpha-hat, far mass right of it.
Outcome joint_histogram_property() {
  const auto data = ppc::synth_2d(300, 17, 10.0);
  std::vector<double> dist;
  for (std::size_t i = 0; i < data.n; ++i) {
    for (std::size_t j = i + 1; j < data.n; ++j) {
      dist.push_back(std::hypot(data.features[2 * i] - data.features[2 * j],
                                data.features[2 * i + 1] - data.features[2 * j + 1]));
    }
  }
  auto sorted = dist;
  const std::size_t q = static_cast<std::size_t>(0.1 * static_cast<double>(sorted.size()));
  std::nth_element(sorted.begin(), sorted.begin() + q, sorted.end());
  const double r = sorted[q];
  const auto labels = ppc::labels_by_radius(data, r, ppc::Metric::kEuclidean);

  ppc::HashingConfig cfg;
  cfg.train.max_bits = 24;
  cfg.train.seed = 5;
  const auto result = ppc::train_with_hashing(data, labels, cfg);
  const double alpha = result.model.alpha;
  const auto codes = testutil::columns(result.codes);

  // Near rows of the histogram are the distance bins at or below r.
  const auto packed = ppc::pack(result.codes);
  const auto hist = ppc::joint_histogram(packed, data, ppc::Metric::kEuclidean, 20);
  std::uint64_t hist_total = 0;
  for (auto c : hist.counts) hist_total += c;

  double near_left = 0, near_total = 0, far_right = 0, far_total = 0;
  std::size_t pair = 0;
  for (std::size_t i = 0; i < data.n; ++i) {
    for (std::size_t j = i + 1; j < data.n; ++j, ++pair) {
      const int dh = oracle::hamming(codes[i], codes[j]);
      if (dist[pair] <= r) {
        near_total += 1;
        near_left += dh <= alpha;
      } else {
        far_total += 1;
        far_right += dh > alpha;
      }
    }
  }
  const double near_frac = near_left / near_total;
  const double far_frac = far_right / far_total;
  return {near_frac >= 0.8 && far_frac >= 0.8 && hist_total == dist.size(),
          format("p=%zu alpha=%g r=%.3f: near mass at d<=alpha %.3f, far mass at d>alpha %.3f",
                 result.codes.bits(), alpha, r, near_frac, far_frac)};
}

// Criterion 6: out-of-sample retrieval on a 10-blob surrogate.
Outcome out_of_sample() {
  ppc::BlobSpec spec;
  spec.n = 2500;
  spec.dim = 16;
  spec.blobs = 10;
  spec.spread = 3.0;
  spec.sigma = 1.5;
  const auto all = ppc::synth_blobs(spec, 2026);
  const auto train = ppc::slice_rows(all, 0, 2000);
  const auto test = ppc::slice_rows(all, 2000, 500);

  ppc::HashingConfig cfg;
  cfg.train.max_bits = 32;
  cfg.train.seed = 11;
  const auto result = ppc::train_with_hashing(train, ppc::labels_by_class(train), cfg);
  const auto test_labels = ppc::labels_by_class(test);
  const auto codes = ppc::pack(ppc::encode(result.model, test));
  const double ppc_auc = ppc::auc(ppc::precision_recall(codes, test_labels));
  const auto random = ppc::random_codes(test.n, 32, 99);
  const double random_auc = ppc::auc(ppc::precision_recall(random, test_labels));
  const double base = static_cast<double>(test_labels.near_count()) /
                      static_cast<double>(test_labels.pair_count());
  return {ppc_auc >= random_auc + 0.2 && ppc_auc > base,
          format("p=%zu test AUC %.4f, random AUC %.4f, base rate %.4f", codes.bits(),
                 ppc_auc, random_auc, base)};
}

// Criterion 7: packed distance, file round trips, seeded determinism.
Outcome exactness() {
  std::mt19937_64 gen(7);
  std::size_t mismatches = 0;
  for (int t = 0; t < 100000; ++t) {
    const std::size_t p = 1 + gen() % 256;
    const auto a = random_signs(p, gen);
    const auto b = random_signs(p, gen);
    if (ppc::hamming(ppc::pack_code(a), ppc::pack_code(b)) !=
        static_cast<int>(p) - oracle::inner(a, b)) {
      ++mismatches;
    }
  }

  const auto dir = oracle::temp_dir("acceptance");
  const auto path = [&](const char* name) { return (dir / name).string(); };
  ppc::BlobSpec spec;
  spec.n = 300;
  spec.dim = 5;
  spec.blobs = 4;
  const auto data = ppc::synth_blobs(spec, 8);
  const auto labels = ppc::labels_by_class(data);
  ppc::HashingConfig cfg;
  cfg.train.max_bits = 12;
  cfg.train.seed = 21;
  for (const char* run : {"1", "2"}) {
    const auto result = ppc::train_with_hashing(data, labels, cfg);
    auto codes = ppc::pack(result.codes);
    codes.ids = data.ids;
    ppc::save_model(result.model, path((std::string("model") + run + ".json").c_str()));
    ppc::save_codes(codes, path((std::string("codes") + run + ".bin").c_str()));
  }
  ppc::save_model(ppc::load_model(path("model1.json")), path("model_rt.json"));
  ppc::save_codes(ppc::load_codes(path("codes1.bin")), path("codes_rt.bin"));
  const bool deterministic =
      oracle::read_file(path("model1.json")) == oracle::read_file(path("model2.json")) &&
      oracle::read_file(path("codes1.bin")) == oracle::read_file(path("codes2.bin"));
  const bool round_trip =
      oracle::read_file(path("model1.json")) == oracle::read_file(path("model_rt.json")) &&
      oracle::read_file(path("codes1.bin")) == oracle::read_file(path("codes_rt.bin"));
  std::filesystem::remove_all(dir);
  return {mismatches == 0 && deterministic && round_trip,
          format("distance mismatches %zu/100000, round trip %s, deterministic %s",
                 mismatches, round_trip ? "yes" : "no", deterministic ? "yes" : "no")};
}

}  // namespace

int main() {
  int failed = 0;
  failed += !report(1, "theorem suite", 10, theorem_suite);
  failed += !report(2, "oracle equivalence", 60, oracle_equivalence);
  failed += !report(3, "formula cross-checks", 600, formula_checks);
  failed += !report(4, "ablation", 600, ablation);
  failed += !report(5, "joint histogram", 120, joint_histogram_property);
  failed += !report(6, "out-of-sample retrieval", 900, out_of_sample);
  failed += !report(7, "index and format exactness", 600, exactness);
  std::printf("%d of 7 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
