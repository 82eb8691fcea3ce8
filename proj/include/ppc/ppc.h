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

/*
 * ppc.h: C interface to the Proximity Preserving Codes library.
 *
 * Every function returns a ppc_status. On failure, ppc_last_error() holds a
 * one-line message for the calling thread. Objects are opaque handles owned
 * by the caller and released with the matching *_free function.
 *
 * Hamming distances follow the doubled convention d = p - <c_i, c_j>, i.e.
 * twice the number of differing bits, so thresholds are comparable with the
 * trained alpha.
 *
 * Functions that fill caller arrays of unknown length take a capacity and
 * always report the required count; pass capacity 0 to query the size.
 */
#ifndef PPC_PPC_H_
#define PPC_PPC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(PPC_BUILDING_LIBRARY)
#define PPC_API __attribute__((visibility("default")))
#else
#define PPC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ppc_status {
  PPC_OK = 0,
  PPC_ERR_INVALID_ARGUMENT = 1,
  PPC_ERR_IO = 2,
  PPC_ERR_FORMAT = 3,
  PPC_ERR_VALIDATION = 4,
  PPC_ERR_NOT_CONVERGED = 5,
  PPC_ERR_INTERNAL = 6
} ppc_status;

typedef enum ppc_dataset_format {
  PPC_FORMAT_CSV = 0,
  PPC_FORMAT_RAW_F32 = 1
} ppc_dataset_format;

typedef enum ppc_metric { PPC_METRIC_EUCLIDEAN = 0, PPC_METRIC_L1 = 1 } ppc_metric;

typedef enum ppc_affinity_mode {
  PPC_AFFINITY_CLASS = 0,
  PPC_AFFINITY_RADIUS = 1
} ppc_affinity_mode;

typedef enum ppc_update { PPC_UPDATE_BIT = 0, PPC_UPDATE_VECTOR = 1 } ppc_update;

typedef enum ppc_init {
  PPC_INIT_RANDOM = 0,
  PPC_INIT_FIEDLER = 1,
  PPC_INIT_SIGNED_LAPLACIAN = 2,
  PPC_INIT_RANDOM_PROJECTION = 3
} ppc_init;

typedef enum ppc_matrix_format {
  PPC_MATRIX_AUTO = 0,
  PPC_MATRIX_DENSE = 1,
  PPC_MATRIX_TRIPLES = 2
} ppc_matrix_format;

typedef struct ppc_dataset ppc_dataset;
typedef struct ppc_labels ppc_labels;
typedef struct ppc_model ppc_model;
typedef struct ppc_codes ppc_codes;
typedef struct ppc_matrix ppc_matrix;

/* ---- errors and version ---- */

PPC_API const char* ppc_last_error(void);
PPC_API const char* ppc_status_name(ppc_status status);
PPC_API const char* ppc_version(void);

/* ---- datasets ---- */

PPC_API ppc_status ppc_dataset_load(const char* path, ppc_dataset_format format,
                                    ppc_dataset** out);
PPC_API ppc_status ppc_dataset_save(const ppc_dataset* data, const char* path,
                                    ppc_dataset_format format);
/* labels may be NULL. features is n x d row-major. */
PPC_API ppc_status ppc_dataset_create(size_t n, size_t d, const double* features,
                                      const int64_t* labels, ppc_dataset** out);
PPC_API ppc_status ppc_dataset_synth_blobs(size_t n, size_t dim, size_t blobs,
                                           double spread, double sigma,
                                           uint64_t seed, ppc_dataset** out);
/* n points uniform in [-box, box]^2, unlabeled. */
PPC_API ppc_status ppc_dataset_synth_2d(size_t n, double box, uint64_t seed,
                                        ppc_dataset** out);
PPC_API ppc_status ppc_dataset_slice(const ppc_dataset* data, size_t first,
                                     size_t count, ppc_dataset** out);
PPC_API size_t ppc_dataset_rows(const ppc_dataset* data);
PPC_API size_t ppc_dataset_dims(const ppc_dataset* data);
PPC_API int ppc_dataset_has_labels(const ppc_dataset* data);
/* Copies row i (d values) into out. */
PPC_API ppc_status ppc_dataset_row(const ppc_dataset* data, size_t i, double* out);
/* Copies the id of row i (NUL-terminated) into buf; needed excludes the NUL. */
PPC_API ppc_status ppc_dataset_id(const ppc_dataset* data, size_t i, char* buf,
                                  size_t capacity, size_t* needed);
PPC_API void ppc_dataset_free(ppc_dataset* data);

/* ---- proximity labels ---- */

typedef struct ppc_affinity_config {
  ppc_affinity_mode mode;
  double radius;
  ppc_metric metric;
  /* Radius mode: when > 0, the radius is chosen to give this many
     neighbors per point on average and `radius` is ignored. */
  double target_avg_neighbors;
} ppc_affinity_config;

PPC_API void ppc_affinity_config_default(ppc_affinity_config* cfg);
PPC_API ppc_status ppc_labels_make(const ppc_dataset* data,
                                   const ppc_affinity_config* cfg,
                                   ppc_labels** out);
PPC_API ppc_status ppc_radius_for_avg_neighbors(const ppc_dataset* data,
                                                double target_avg, ppc_metric metric,
                                                double* radius,
                                                double* achieved_avg);
PPC_API size_t ppc_labels_points(const ppc_labels* labels);
PPC_API uint64_t ppc_labels_near_count(const ppc_labels* labels);
PPC_API uint64_t ppc_labels_far_count(const ppc_labels* labels);
/* 1 when (i, j) is a near pair, 0 when far, -1 on bad indices. */
PPC_API int ppc_labels_is_near(const ppc_labels* labels, size_t i, size_t j);
PPC_API void ppc_labels_free(ppc_labels* labels);

/* ---- training ---- */

typedef struct ppc_train_config {
  size_t max_bits;
  uint64_t target_empirical_loss;
  ppc_update update;
  ppc_init init;
  size_t restarts;
  uint64_t seed;
  size_t max_points;
  size_t max_vector_iterations;
  size_t max_bit_sweeps;
  double eigen_tolerance;
  /* Gaussian kernel width; <= 0 selects the median pairwise distance. */
  double kernel_sigma;
  double kernel_ridge;
  size_t kernel_centers;
  size_t kernel_max_iterations;
  double kernel_tolerance;
} ppc_train_config;

typedef struct ppc_bit_record {
  size_t bit;
  double alpha;
  double beta;
  uint64_t empirical_loss;
  double relaxed_loss;
  double solver_objective;
  size_t iterations;
  double bit_accuracy;
} ppc_bit_record;

typedef void (*ppc_bit_callback)(const ppc_bit_record* record, void* user);

PPC_API void ppc_train_config_default(ppc_train_config* cfg);

/* Trains kernel hash functions with error correction. Either output pointer
   may be NULL. `codes` receives the classifier-produced training codes. */
PPC_API ppc_status ppc_train(const ppc_dataset* data, const ppc_labels* labels,
                             const ppc_train_config* cfg,
                             ppc_bit_callback on_bit, void* user,
                             ppc_model** model, ppc_codes** codes);

/* Trains codes for the labeled points only, without hash functions. */
PPC_API ppc_status ppc_train_codes(const ppc_labels* labels,
                                   const ppc_train_config* cfg,
                                   ppc_bit_callback on_bit, void* user,
                                   ppc_codes** codes, double* alpha);

/* ---- models ---- */

PPC_API ppc_status ppc_model_load(const char* path, ppc_model** out);
PPC_API ppc_status ppc_model_save(const ppc_model* model, const char* path);
PPC_API size_t ppc_model_bits(const ppc_model* model);
PPC_API size_t ppc_model_centers(const ppc_model* model);
PPC_API size_t ppc_model_dims(const ppc_model* model);
PPC_API double ppc_model_alpha(const ppc_model* model);
PPC_API ppc_status ppc_encode(const ppc_model* model, const ppc_dataset* data,
                              ppc_codes** out);
PPC_API void ppc_model_free(ppc_model* model);

/* ---- codes and retrieval ---- */

/* values is n x p row-major over {+1, -1}. */
PPC_API ppc_status ppc_codes_create(size_t n, size_t p, const int8_t* values,
                                    ppc_codes** out);
PPC_API ppc_status ppc_codes_random(size_t n, size_t p, uint64_t seed,
                                    ppc_codes** out);
PPC_API ppc_status ppc_codes_load(const char* path, ppc_codes** out);
PPC_API ppc_status ppc_codes_save(const ppc_codes* codes, const char* path);
PPC_API size_t ppc_codes_points(const ppc_codes* codes);
PPC_API size_t ppc_codes_bits(const ppc_codes* codes);
/* Copies code i (p values over {+1, -1}) into out. */
PPC_API ppc_status ppc_codes_get(const ppc_codes* codes, size_t i, int8_t* out);
/* Attaches the dataset's row ids; row counts must agree. */
PPC_API ppc_status ppc_codes_set_ids(ppc_codes* codes, const ppc_dataset* data);
/* Copies the id of code i, or its index when no ids are attached. */
PPC_API ppc_status ppc_codes_id(const ppc_codes* codes, size_t i, char* buf,
                                size_t capacity, size_t* needed);
PPC_API ppc_status ppc_hamming(const ppc_codes* a, size_t i, const ppc_codes* b,
                               size_t j, int* distance);

typedef struct ppc_neighbor {
  size_t index;
  int distance;
} ppc_neighbor;

/* Codes of `index` within distance alpha of query code q, ascending by
   distance then index. */
PPC_API ppc_status ppc_query_radius(const ppc_codes* index,
                                    const ppc_codes* queries, size_t q,
                                    double alpha, ppc_neighbor* out,
                                    size_t capacity, size_t* count);
/* The k nearest codes, ties by index; k > n returns all. */
PPC_API ppc_status ppc_query_knn(const ppc_codes* index, const ppc_codes* queries,
                                 size_t q, size_t k, ppc_neighbor* out,
                                 size_t capacity, size_t* count);
PPC_API void ppc_codes_free(ppc_codes* codes);

/* ---- evaluation ---- */

typedef struct ppc_pr_point {
  double alpha;
  double precision;
  double recall;
  uint64_t tp;
  uint64_t fp;
  uint64_t fn;
  uint64_t tn;
} ppc_pr_point;

/* One point per alpha in {0, 2, ..., 2p}; auc may be NULL. */
PPC_API ppc_status ppc_eval_pr(const ppc_codes* codes, const ppc_labels* labels,
                               ppc_pr_point* out, size_t capacity, size_t* count,
                               double* auc);
PPC_API ppc_status ppc_eval_write_pr_csv(const ppc_codes* codes,
                                         const ppc_labels* labels,
                                         const char* path, double* auc);
PPC_API ppc_status ppc_eval_write_histogram_csv(const ppc_codes* codes,
                                                const ppc_dataset* data,
                                                ppc_metric metric, size_t bins,
                                                const char* path);

/* ---- signed graph cut ---- */

typedef struct ppc_cut_options {
  ppc_update update;
  ppc_init init;
  size_t restarts;
  uint64_t seed;
  size_t max_vector_iterations;
  size_t max_bit_sweeps;
  double eigen_tolerance;
} ppc_cut_options;

typedef struct ppc_cut_report {
  double objective;
  double initial_objective;
  size_t iterations;
  int converged;
  size_t candidates;
} ppc_cut_report;

/* w is n x n row-major and must be symmetric. */
PPC_API ppc_status ppc_matrix_create(size_t n, const double* w, ppc_matrix** out);
PPC_API ppc_status ppc_matrix_load(const char* path, ppc_matrix_format format,
                                   ppc_matrix** out);
PPC_API size_t ppc_matrix_size(const ppc_matrix* m);
PPC_API void ppc_matrix_free(ppc_matrix* m);

PPC_API void ppc_cut_options_default(ppc_cut_options* opts);
/* Maximizes b^T W b; bits receives n values over {+1, -1}. */
PPC_API ppc_status ppc_cut_solve(const ppc_matrix* m, const ppc_cut_options* opts,
                                 int8_t* bits, ppc_cut_report* report);
/* Exact maximizer by enumeration (n <= 22), first in lexicographic order
   with bits[0] = +1. */
PPC_API ppc_status ppc_cut_exhaustive(const ppc_matrix* m, int8_t* bits,
                                      double* value);
PPC_API ppc_status ppc_cut_objective(const ppc_matrix* m, const int8_t* bits,
                                     double* value);

#ifdef __cplusplus
}
#endif

#endif  /* PPC_PPC_H_ */
