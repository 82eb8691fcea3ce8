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

#include "ppc/ppc.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>

#include "core/affinity.hpp"
#include "core/dataset_io.hpp"
#include "core/error.hpp"
#include "core/eval.hpp"
#include "core/hamming_index.hpp"
#include "core/hashing.hpp"
#include "core/matrix_io.hpp"
#include "core/rng.hpp"
#include "core/signed_cut.hpp"
#include "core/trainer.hpp"

struct ppc_dataset {
  ppc::Dataset data;
};
struct ppc_labels {
  ppc::ProximityLabels labels;
};
struct ppc_model {
  ppc::HashModel model;
};
struct ppc_codes {
  ppc::PackedCodes codes;
};
struct ppc_matrix {
  ppc::SignedWeightMatrix w;
};

namespace {

thread_local std::string g_last_error;

ppc_status to_status(ppc::ErrorCode code) {
  switch (code) {
    case ppc::ErrorCode::kInvalidArgument: return PPC_ERR_INVALID_ARGUMENT;
    case ppc::ErrorCode::kIo: return PPC_ERR_IO;
    case ppc::ErrorCode::kFormat: return PPC_ERR_FORMAT;
    case ppc::ErrorCode::kValidation: return PPC_ERR_VALIDATION;
    case ppc::ErrorCode::kNotConverged: return PPC_ERR_NOT_CONVERGED;
    case ppc::ErrorCode::kInternal: return PPC_ERR_INTERNAL;
  }
  return PPC_ERR_INTERNAL;
}

template <typename F>
ppc_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return PPC_OK;
  } catch (const ppc::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PPC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PPC_ERR_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) {
    ppc::fail(ppc::ErrorCode::kInvalidArgument, std::string(name) + " is NULL");
  }
}

ppc::Metric to_metric(ppc_metric m) {
  switch (m) {
    case PPC_METRIC_EUCLIDEAN: return ppc::Metric::kEuclidean;
    case PPC_METRIC_L1: return ppc::Metric::kL1;
  }
  ppc::fail(ppc::ErrorCode::kInvalidArgument, "unknown metric");
}

ppc::UpdateScheme to_update(ppc_update u) {
  switch (u) {
    case PPC_UPDATE_BIT: return ppc::UpdateScheme::kBit;
    case PPC_UPDATE_VECTOR: return ppc::UpdateScheme::kVector;
  }
  ppc::fail(ppc::ErrorCode::kInvalidArgument, "unknown update scheme");
}

ppc::InitMethod to_init(ppc_init i) {
  switch (i) {
    case PPC_INIT_RANDOM: return ppc::InitMethod::kRandom;
    case PPC_INIT_FIEDLER: return ppc::InitMethod::kFiedler;
    case PPC_INIT_SIGNED_LAPLACIAN: return ppc::InitMethod::kSignedLaplacian;
    case PPC_INIT_RANDOM_PROJECTION: return ppc::InitMethod::kRandomProjection;
  }
  ppc::fail(ppc::ErrorCode::kInvalidArgument, "unknown init method");
}

ppc::DatasetFormat to_format(ppc_dataset_format f) {
  switch (f) {
    case PPC_FORMAT_CSV: return ppc::DatasetFormat::kCsv;
    case PPC_FORMAT_RAW_F32: return ppc::DatasetFormat::kRawF32;
  }
  ppc::fail(ppc::ErrorCode::kInvalidArgument, "unknown dataset format");
}

ppc::TrainConfig to_train(const ppc_train_config& c) {
  ppc::TrainConfig t;
  t.max_bits = c.max_bits;
  t.target_empirical_loss = c.target_empirical_loss;
  t.solver = to_update(c.update);
  t.init = to_init(c.init);
  t.restarts = c.restarts;
  t.seed = c.seed;
  t.max_points = c.max_points;
  t.max_vector_iterations = c.max_vector_iterations;
  t.max_bit_sweeps = c.max_bit_sweeps;
  t.eigen.tol = c.eigen_tolerance;
  return t;
}

ppc::KernelConfig to_kernel(const ppc_train_config& c) {
  ppc::KernelConfig k;
  k.sigma = c.kernel_sigma;
  k.ridge = c.kernel_ridge;
  k.centers = c.kernel_centers;
  k.max_iterations = c.kernel_max_iterations;
  k.tolerance = c.kernel_tolerance;
  return k;
}

ppc::BitCallback to_callback(ppc_bit_callback cb, void* user) {
  if (cb == nullptr) return {};
  return [cb, user](const ppc::BitRecord& r) {
    const ppc_bit_record rec{r.bit,          r.alpha,           r.beta,
                             r.empirical_loss, r.relaxed_loss, r.solver_objective,
                             r.iterations,   r.bit_accuracy};
    cb(&rec, user);
  };
}

void copy_string(const std::string& s, char* buf, std::size_t capacity,
                 std::size_t* needed) {
  if (needed) *needed = s.size();
  if (buf != nullptr && capacity > 0) {
    const std::size_t n = std::min(s.size(), capacity - 1);
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
  }
}

void copy_neighbors(const std::vector<ppc::Neighbor>& found, ppc_neighbor* out,
                    std::size_t capacity, std::size_t* count) {
  need(count, "count");
  *count = found.size();
  if (out == nullptr) return;
  const std::size_t n = std::min(capacity, found.size());
  for (std::size_t i = 0; i < n; ++i) out[i] = {found[i].index, found[i].distance};
}

std::vector<std::uint64_t> query_words(const ppc_codes* index,
                                       const ppc_codes* queries, std::size_t q) {
  need(index, "index");
  need(queries, "queries");
  ppc::require(q < queries->codes.size(), "query index out of range");
  ppc::require(queries->codes.bits() == index->codes.bits(),
               "query and index code lengths differ");
  const auto w = queries->codes.code(q);
  return {w.begin(), w.end()};
}

}  // namespace

extern "C" {

const char* ppc_last_error(void) { return g_last_error.c_str(); }

const char* ppc_status_name(ppc_status status) {
  switch (status) {
    case PPC_OK: return "ok";
    case PPC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PPC_ERR_IO: return "i/o error";
    case PPC_ERR_FORMAT: return "format error";
    case PPC_ERR_VALIDATION: return "validation error";
    case PPC_ERR_NOT_CONVERGED: return "not converged";
    case PPC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ppc_version(void) { return "1.0.0"; }

ppc_status ppc_dataset_load(const char* path, ppc_dataset_format format,
                            ppc_dataset** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new ppc_dataset{ppc::load_dataset(path, to_format(format))};
  });
}

ppc_status ppc_dataset_save(const ppc_dataset* data, const char* path,
                            ppc_dataset_format format) {
  return guarded([&] {
    need(data, "data");
    need(path, "path");
    ppc::save_dataset(data->data, path, to_format(format));
  });
}

ppc_status ppc_dataset_create(size_t n, size_t d, const double* features,
                              const int64_t* labels, ppc_dataset** out) {
  return guarded([&] {
    need(out, "out");
    ppc::require(n >= 1 && d >= 1, "dataset needs n >= 1 and d >= 1");
    need(features, "features");
    ppc::Dataset ds;
    ds.n = n;
    ds.d = d;
    ds.features.assign(features, features + n * d);
    if (labels != nullptr) ds.class_labels.emplace(labels, labels + n);
    for (std::size_t i = 0; i < n; ++i) ds.ids.push_back(std::to_string(i));
    ds.validate();
    *out = new ppc_dataset{std::move(ds)};
  });
}

ppc_status ppc_dataset_synth_blobs(size_t n, size_t dim, size_t blobs,
                                   double spread, double sigma, uint64_t seed,
                                   ppc_dataset** out) {
  return guarded([&] {
    need(out, "out");
    ppc::BlobSpec spec{n, dim, blobs, spread, sigma};
    *out = new ppc_dataset{ppc::synth_blobs(spec, seed)};
  });
}

ppc_status ppc_dataset_synth_2d(size_t n, double box, uint64_t seed,
                                ppc_dataset** out) {
  return guarded([&] {
    need(out, "out");
    *out = new ppc_dataset{ppc::synth_2d(n, seed, box)};
  });
}

ppc_status ppc_dataset_slice(const ppc_dataset* data, size_t first, size_t count,
                             ppc_dataset** out) {
  return guarded([&] {
    need(data, "data");
    need(out, "out");
    *out = new ppc_dataset{ppc::slice_rows(data->data, first, count)};
  });
}

size_t ppc_dataset_rows(const ppc_dataset* data) { return data ? data->data.n : 0; }
size_t ppc_dataset_dims(const ppc_dataset* data) { return data ? data->data.d : 0; }
int ppc_dataset_has_labels(const ppc_dataset* data) {
  return data && data->data.class_labels.has_value() ? 1 : 0;
}

ppc_status ppc_dataset_row(const ppc_dataset* data, size_t i, double* out) {
  return guarded([&] {
    need(data, "data");
    need(out, "out");
    ppc::require(i < data->data.n, "row index out of range");
    const auto row = data->data.row(i);
    std::copy(row.begin(), row.end(), out);
  });
}

ppc_status ppc_dataset_id(const ppc_dataset* data, size_t i, char* buf,
                          size_t capacity, size_t* needed) {
  return guarded([&] {
    need(data, "data");
    ppc::require(i < data->data.n, "row index out of range");
    copy_string(data->data.ids[i], buf, capacity, needed);
  });
}

void ppc_dataset_free(ppc_dataset* data) { delete data; }

void ppc_affinity_config_default(ppc_affinity_config* cfg) {
  if (cfg == nullptr) return;
  *cfg = {PPC_AFFINITY_CLASS, 0.0, PPC_METRIC_EUCLIDEAN, 0.0};
}

ppc_status ppc_labels_make(const ppc_dataset* data, const ppc_affinity_config* cfg,
                           ppc_labels** out) {
  return guarded([&] {
    need(data, "data");
    need(cfg, "cfg");
    need(out, "out");
    ppc::AffinityConfig a;
    switch (cfg->mode) {
      case PPC_AFFINITY_CLASS: a.mode = ppc::AffinityMode::kByClass; break;
      case PPC_AFFINITY_RADIUS: a.mode = ppc::AffinityMode::kByRadius; break;
      default: ppc::fail(ppc::ErrorCode::kInvalidArgument, "unknown affinity mode");
    }
    a.radius = cfg->radius;
    a.metric = to_metric(cfg->metric);
    if (cfg->target_avg_neighbors > 0.0) a.target_avg_neighbors = cfg->target_avg_neighbors;
    *out = new ppc_labels{ppc::make_labels(data->data, a)};
  });
}

ppc_status ppc_radius_for_avg_neighbors(const ppc_dataset* data, double target_avg,
                                        ppc_metric metric, double* radius,
                                        double* achieved_avg) {
  return guarded([&] {
    need(data, "data");
    const auto r = ppc::radius_for_avg_neighbors(data->data, target_avg, to_metric(metric));
    if (radius) *radius = r.radius;
    if (achieved_avg) *achieved_avg = r.achieved_avg_neighbors;
  });
}

size_t ppc_labels_points(const ppc_labels* l) { return l ? l->labels.n() : 0; }
uint64_t ppc_labels_near_count(const ppc_labels* l) {
  return l ? l->labels.near_count() : 0;
}
uint64_t ppc_labels_far_count(const ppc_labels* l) {
  return l ? l->labels.far_count() : 0;
}
int ppc_labels_is_near(const ppc_labels* l, size_t i, size_t j) {
  if (!l || i == j || i >= l->labels.n() || j >= l->labels.n()) return -1;
  return l->labels.near(i, j) ? 1 : 0;
}
void ppc_labels_free(ppc_labels* labels) { delete labels; }

void ppc_train_config_default(ppc_train_config* cfg) {
  if (cfg == nullptr) return;
  const ppc::TrainConfig t;
  const ppc::KernelConfig k;
  *cfg = {t.max_bits,       t.target_empirical_loss,
          PPC_UPDATE_BIT,   PPC_INIT_RANDOM,
          t.restarts,       t.seed,
          t.max_points,     t.max_vector_iterations,
          t.max_bit_sweeps, t.eigen.tol,
          k.sigma,          k.ridge,
          k.centers,        k.max_iterations,
          k.tolerance};
}

ppc_status ppc_train(const ppc_dataset* data, const ppc_labels* labels,
                     const ppc_train_config* cfg, ppc_bit_callback on_bit,
                     void* user, ppc_model** model, ppc_codes** codes) {
  return guarded([&] {
    need(data, "data");
    need(labels, "labels");
    need(cfg, "cfg");
    ppc::HashingConfig hc{to_train(*cfg), to_kernel(*cfg)};
    auto result = ppc::train_with_hashing(data->data, labels->labels, hc,
                                          to_callback(on_bit, user));
    if (codes) {
      auto packed = ppc::pack(result.codes);
      packed.ids = data->data.ids;
      *codes = new ppc_codes{std::move(packed)};
    }
    if (model) *model = new ppc_model{std::move(result.model)};
  });
}

ppc_status ppc_train_codes(const ppc_labels* labels, const ppc_train_config* cfg,
                           ppc_bit_callback on_bit, void* user, ppc_codes** codes,
                           double* alpha) {
  return guarded([&] {
    need(labels, "labels");
    need(cfg, "cfg");
    const auto result = ppc::train(labels->labels, to_train(*cfg),
                                   to_callback(on_bit, user));
    if (alpha) *alpha = result.state.alpha_hat;
    if (codes) *codes = new ppc_codes{ppc::pack(result.codes)};
  });
}

ppc_status ppc_model_load(const char* path, ppc_model** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new ppc_model{ppc::load_model(path)};
  });
}

ppc_status ppc_model_save(const ppc_model* model, const char* path) {
  return guarded([&] {
    need(model, "model");
    need(path, "path");
    ppc::save_model(model->model, path);
  });
}

size_t ppc_model_bits(const ppc_model* m) { return m ? m->model.p() : 0; }
size_t ppc_model_centers(const ppc_model* m) {
  return m && m->model.p() ? m->model.classifiers.front().basis().m : 0;
}
size_t ppc_model_dims(const ppc_model* m) {
  return m && m->model.p() ? m->model.classifiers.front().basis().d : 0;
}
double ppc_model_alpha(const ppc_model* m) { return m ? m->model.alpha : 0.0; }

ppc_status ppc_encode(const ppc_model* model, const ppc_dataset* data,
                      ppc_codes** out) {
  return guarded([&] {
    need(model, "model");
    need(data, "data");
    need(out, "out");
    auto packed = ppc::pack(ppc::encode(model->model, data->data));
    packed.ids = data->data.ids;
    *out = new ppc_codes{std::move(packed)};
  });
}

void ppc_model_free(ppc_model* model) { delete model; }

ppc_status ppc_codes_create(size_t n, size_t p, const int8_t* values,
                            ppc_codes** out) {
  return guarded([&] {
    need(out, "out");
    need(values, "values");
    ppc::PackedCodes codes(n, p);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t b = 0; b < p; ++b) {
        const int v = values[i * p + b];
        ppc::require(v == 1 || v == -1, "code values must be +1 or -1");
        codes.set_bit(i, b, v);
      }
    }
    *out = new ppc_codes{std::move(codes)};
  });
}

ppc_status ppc_codes_random(size_t n, size_t p, uint64_t seed, ppc_codes** out) {
  return guarded([&] {
    need(out, "out");
    *out = new ppc_codes{ppc::random_codes(n, p, seed)};
  });
}

ppc_status ppc_codes_load(const char* path, ppc_codes** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new ppc_codes{ppc::load_codes(path)};
  });
}

ppc_status ppc_codes_save(const ppc_codes* codes, const char* path) {
  return guarded([&] {
    need(codes, "codes");
    need(path, "path");
    ppc::save_codes(codes->codes, path);
  });
}

size_t ppc_codes_points(const ppc_codes* c) { return c ? c->codes.size() : 0; }
size_t ppc_codes_bits(const ppc_codes* c) { return c ? c->codes.bits() : 0; }

ppc_status ppc_codes_get(const ppc_codes* codes, size_t i, int8_t* out) {
  return guarded([&] {
    need(codes, "codes");
    need(out, "out");
    ppc::require(i < codes->codes.size(), "code index out of range");
    for (std::size_t b = 0; b < codes->codes.bits(); ++b) {
      out[b] = static_cast<int8_t>(codes->codes.bit(i, b));
    }
  });
}

ppc_status ppc_codes_set_ids(ppc_codes* codes, const ppc_dataset* data) {
  return guarded([&] {
    need(codes, "codes");
    need(data, "data");
    ppc::require(codes->codes.size() == data->data.n,
                 "codes and dataset disagree on point count");
    codes->codes.ids = data->data.ids;
  });
}

ppc_status ppc_codes_id(const ppc_codes* codes, size_t i, char* buf,
                        size_t capacity, size_t* needed) {
  return guarded([&] {
    need(codes, "codes");
    ppc::require(i < codes->codes.size(), "code index out of range");
    copy_string(codes->codes.ids.empty() ? std::to_string(i) : codes->codes.ids[i],
                buf, capacity, needed);
  });
}

ppc_status ppc_hamming(const ppc_codes* a, size_t i, const ppc_codes* b, size_t j,
                       int* distance) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(distance, "distance");
    ppc::require(i < a->codes.size() && j < b->codes.size(), "code index out of range");
    ppc::require(a->codes.bits() == b->codes.bits(), "code lengths differ");
    *distance = ppc::hamming(a->codes.code(i), b->codes.code(j));
  });
}

ppc_status ppc_query_radius(const ppc_codes* index, const ppc_codes* queries,
                            size_t q, double alpha, ppc_neighbor* out,
                            size_t capacity, size_t* count) {
  return guarded([&] {
    const auto words = query_words(index, queries, q);
    copy_neighbors(ppc::query_radius(index->codes, words, alpha), out, capacity, count);
  });
}

ppc_status ppc_query_knn(const ppc_codes* index, const ppc_codes* queries, size_t q,
                         size_t k, ppc_neighbor* out, size_t capacity,
                         size_t* count) {
  return guarded([&] {
    const auto words = query_words(index, queries, q);
    copy_neighbors(ppc::query_knn(index->codes, words, k), out, capacity, count);
  });
}

void ppc_codes_free(ppc_codes* codes) { delete codes; }

ppc_status ppc_eval_pr(const ppc_codes* codes, const ppc_labels* labels,
                       ppc_pr_point* out, size_t capacity, size_t* count,
                       double* auc) {
  return guarded([&] {
    need(codes, "codes");
    need(labels, "labels");
    const auto curve = ppc::precision_recall(codes->codes, labels->labels);
    if (count) *count = curve.points.size();
    if (auc) *auc = ppc::auc(curve);
    if (out == nullptr) return;
    const std::size_t n = std::min(capacity, curve.points.size());
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = curve.points[i];
      out[i] = {p.alpha, p.precision, p.recall, p.tp, p.fp, p.fn, p.tn};
    }
  });
}

ppc_status ppc_eval_write_pr_csv(const ppc_codes* codes, const ppc_labels* labels,
                                 const char* path, double* auc) {
  return guarded([&] {
    need(codes, "codes");
    need(labels, "labels");
    need(path, "path");
    const auto curve = ppc::precision_recall(codes->codes, labels->labels);
    ppc::write_pr_csv(curve, path);
    if (auc) *auc = ppc::auc(curve);
  });
}

ppc_status ppc_eval_write_histogram_csv(const ppc_codes* codes,
                                        const ppc_dataset* data, ppc_metric metric,
                                        size_t bins, const char* path) {
  return guarded([&] {
    need(codes, "codes");
    need(data, "data");
    need(path, "path");
    ppc::write_histogram_csv(
        ppc::joint_histogram(codes->codes, data->data, to_metric(metric), bins), path);
  });
}

ppc_status ppc_matrix_create(size_t n, const double* w, ppc_matrix** out) {
  return guarded([&] {
    need(out, "out");
    need(w, "w");
    ppc::require(n >= 1, "matrix needs n >= 1");
    *out = new ppc_matrix{ppc::SignedWeightMatrix::from_dense(
        n, std::vector<double>(w, w + n * n))};
  });
}

ppc_status ppc_matrix_load(const char* path, ppc_matrix_format format,
                           ppc_matrix** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    ppc::MatrixFormat f = ppc::MatrixFormat::kAuto;
    switch (format) {
      case PPC_MATRIX_AUTO: break;
      case PPC_MATRIX_DENSE: f = ppc::MatrixFormat::kDense; break;
      case PPC_MATRIX_TRIPLES: f = ppc::MatrixFormat::kTriples; break;
      default: ppc::fail(ppc::ErrorCode::kInvalidArgument, "unknown matrix format");
    }
    *out = new ppc_matrix{ppc::load_weight_matrix(path, f)};
  });
}

size_t ppc_matrix_size(const ppc_matrix* m) { return m ? m->w.size() : 0; }
void ppc_matrix_free(ppc_matrix* m) { delete m; }

void ppc_cut_options_default(ppc_cut_options* opts) {
  if (opts == nullptr) return;
  const ppc::TrainConfig t;
  *opts = {PPC_UPDATE_BIT, PPC_INIT_RANDOM, t.restarts, 0,
           t.max_vector_iterations, t.max_bit_sweeps, t.eigen.tol};
}

ppc_status ppc_cut_solve(const ppc_matrix* m, const ppc_cut_options* opts,
                         int8_t* bits, ppc_cut_report* report) {
  return guarded([&] {
    need(m, "matrix");
    need(opts, "opts");
    ppc::TrainConfig t;
    t.solver = to_update(opts->update);
    t.init = to_init(opts->init);
    t.restarts = opts->restarts;
    t.max_vector_iterations = opts->max_vector_iterations;
    t.max_bit_sweeps = opts->max_bit_sweeps;
    t.eigen.tol = opts->eigen_tolerance;
    t.validate();
    const auto sol = ppc::solve_cut(m->w, t, ppc::derive_seed(opts->seed, "cut"));
    if (bits) std::copy(sol.bits.values().begin(), sol.bits.values().end(), bits);
    if (report) {
      *report = {sol.objective, sol.initial_objective, sol.iterations,
                 static_cast<int>(sol.converged), sol.candidates};
    }
  });
}

ppc_status ppc_cut_exhaustive(const ppc_matrix* m, int8_t* bits, double* value) {
  return guarded([&] {
    need(m, "matrix");
    const auto r = ppc::exhaustive_maxcut(m->w);
    if (bits) std::copy(r.bits.values().begin(), r.bits.values().end(), bits);
    if (value) *value = r.value;
  });
}

ppc_status ppc_cut_objective(const ppc_matrix* m, const int8_t* bits,
                             double* value) {
  return guarded([&] {
    need(m, "matrix");
    need(bits, "bits");
    need(value, "value");
    *value = ppc::objective(
        m->w, ppc::BitVector::from_signs(std::span<const std::int8_t>(bits, m->w.size())));
  });
}

}  // extern "C"
