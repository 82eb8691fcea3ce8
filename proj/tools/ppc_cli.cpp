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

// ppc: command-line front end over the C API.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppc/ppc.h"

namespace {

using nlohmann::json;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;

struct CliError : std::runtime_error {
  CliError(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
  int exit_code;
};

[[noreturn]] void usage_error(const std::string& what) { throw CliError(kExitUsage, what); }
[[noreturn]] void invalid(const std::string& what) {
  throw CliError(kExitValidation, what);
}

void check(ppc_status s) {
  if (s == PPC_OK) return;
  const std::string msg = ppc_last_error();
  switch (s) {
    case PPC_ERR_INVALID_ARGUMENT:
    case PPC_ERR_FORMAT:
    case PPC_ERR_VALIDATION:
      throw CliError(kExitValidation, msg);
    default:
      throw CliError(kExitRuntime, msg);
  }
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Dataset = std::unique_ptr<ppc_dataset, Deleter<ppc_dataset, ppc_dataset_free>>;
using Labels = std::unique_ptr<ppc_labels, Deleter<ppc_labels, ppc_labels_free>>;
using Model = std::unique_ptr<ppc_model, Deleter<ppc_model, ppc_model_free>>;
using Codes = std::unique_ptr<ppc_codes, Deleter<ppc_codes, ppc_codes_free>>;
using Matrix = std::unique_ptr<ppc_matrix, Deleter<ppc_matrix, ppc_matrix_free>>;

// ---- run configuration ----

struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t bits = 32;
  std::uint64_t target_empirical_loss = 0;
  std::string affinity = "class";
  std::optional<double> radius;
  std::optional<double> avg_neighbors;
  std::string metric = "euclidean";
  std::string update = "bit";
  std::string init = "random";
  std::size_t restarts = 4;
  std::size_t max_points = 10000;
  std::size_t max_vector_iterations = 1000;
  std::size_t max_bit_sweeps = 100;
  double eigen_tolerance = 1e-8;
  double kernel_sigma = 0.0;
  double kernel_ridge = 1e-3;
  std::size_t kernel_centers = 1000;
  std::size_t kernel_max_iterations = 500;
  double kernel_tolerance = 1e-6;
  std::string data;
  std::string data_format = "auto";
  std::string out;
  std::string codes;
  std::string log;
};

template <typename T>
void take(const json& obj, const char* key, T& dst, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    dst = obj.at(key).get<T>();
  } catch (const json::exception&) {
    invalid("config key '" + where + key + "' has the wrong type");
  }
}

template <typename T>
void take(const json& obj, const char* key, std::optional<T>& dst,
          const std::string& where) {
  if (!obj.contains(key)) return;
  T v{};
  take(obj, key, v, where);
  dst = v;
}

void reject_unknown(const json& obj, const std::vector<std::string>& allowed,
                    const std::string& where) {
  if (!obj.is_object()) invalid("config section '" + where + "' must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      invalid("unknown config key '" + where + key + "'");
    }
  }
}

RunConfig load_config(const std::string& path) {
  RunConfig c;
  if (path.empty()) return c;
  std::ifstream in(path);
  if (!in) throw CliError(kExitRuntime, "cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    invalid("config is not valid JSON: " + std::string(e.what()));
  }
  reject_unknown(doc,
                 {"seed", "bits", "target_empirical_loss", "affinity", "update",
                  "init", "restarts", "max_points", "max_vector_iterations",
                  "max_bit_sweeps", "eigen_tolerance", "kernel", "data",
                  "data_format", "out", "codes", "log"},
                 "");
  take(doc, "seed", c.seed, "");
  take(doc, "bits", c.bits, "");
  take(doc, "target_empirical_loss", c.target_empirical_loss, "");
  take(doc, "update", c.update, "");
  take(doc, "init", c.init, "");
  take(doc, "restarts", c.restarts, "");
  take(doc, "max_points", c.max_points, "");
  take(doc, "max_vector_iterations", c.max_vector_iterations, "");
  take(doc, "max_bit_sweeps", c.max_bit_sweeps, "");
  take(doc, "eigen_tolerance", c.eigen_tolerance, "");
  take(doc, "data", c.data, "");
  take(doc, "data_format", c.data_format, "");
  take(doc, "out", c.out, "");
  take(doc, "codes", c.codes, "");
  take(doc, "log", c.log, "");
  if (doc.contains("affinity")) {
    const auto& a = doc["affinity"];
    reject_unknown(a, {"mode", "radius", "avg_neighbors", "metric"}, "affinity.");
    take(a, "mode", c.affinity, "affinity.");
    take(a, "radius", c.radius, "affinity.");
    take(a, "avg_neighbors", c.avg_neighbors, "affinity.");
    take(a, "metric", c.metric, "affinity.");
  }
  if (doc.contains("kernel")) {
    const auto& k = doc["kernel"];
    reject_unknown(k, {"sigma", "ridge", "centers", "max_iterations", "tolerance"},
                   "kernel.");
    take(k, "sigma", c.kernel_sigma, "kernel.");
    take(k, "ridge", c.kernel_ridge, "kernel.");
    take(k, "centers", c.kernel_centers, "kernel.");
    take(k, "max_iterations", c.kernel_max_iterations, "kernel.");
    take(k, "tolerance", c.kernel_tolerance, "kernel.");
  }
  return c;
}

// Flag values that override the config file when given.
struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> bits;
  std::optional<std::string> affinity;
  std::optional<double> radius;
  std::optional<double> avg_neighbors;
  std::optional<std::string> metric;
  std::optional<std::string> update;
  std::optional<std::string> init;
  std::optional<std::size_t> restarts;
  std::optional<std::string> data;
  std::optional<std::string> data_format;
};

void add_affinity_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON run configuration");
  cmd->add_option("--affinity", o.affinity, "class | radius");
  cmd->add_option("--radius", o.radius, "Near-pair radius (radius affinity)");
  cmd->add_option("--avg-neighbors", o.avg_neighbors,
                  "Pick the radius for this average neighbor count");
  cmd->add_option("--metric", o.metric, "euclidean | l1");
  cmd->add_option("--data", o.data, "Dataset file");
  cmd->add_option("--data-format", o.data_format, "auto | csv | raw_f32");
}

void add_train_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--bits", o.bits, "Maximum code length p");
  cmd->add_option("--update", o.update, "bit | vector");
  cmd->add_option("--init", o.init,
                  "random | fiedler | signed-laplacian | random-projection");
  cmd->add_option("--restarts", o.restarts, "Initial guesses per bit");
}

RunConfig resolve(const Overrides& o) {
  RunConfig c = load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.bits) c.bits = *o.bits;
  if (o.affinity) c.affinity = *o.affinity;
  if (o.radius) c.radius = o.radius;
  if (o.avg_neighbors) c.avg_neighbors = o.avg_neighbors;
  if (o.metric) c.metric = *o.metric;
  if (o.update) c.update = *o.update;
  if (o.init) c.init = *o.init;
  if (o.restarts) c.restarts = *o.restarts;
  if (o.data) c.data = *o.data;
  if (o.data_format) c.data_format = *o.data_format;
  return c;
}

ppc_metric parse_metric(const std::string& s) {
  if (s == "euclidean") return PPC_METRIC_EUCLIDEAN;
  if (s == "l1") return PPC_METRIC_L1;
  invalid("unknown metric '" + s + "' (expected euclidean or l1)");
}

ppc_update parse_update(const std::string& s) {
  if (s == "bit") return PPC_UPDATE_BIT;
  if (s == "vector") return PPC_UPDATE_VECTOR;
  invalid("unknown update '" + s + "' (expected bit or vector)");
}

ppc_init parse_init(const std::string& s) {
  if (s == "random") return PPC_INIT_RANDOM;
  if (s == "fiedler") return PPC_INIT_FIEDLER;
  if (s == "signed-laplacian") return PPC_INIT_SIGNED_LAPLACIAN;
  if (s == "random-projection") return PPC_INIT_RANDOM_PROJECTION;
  invalid("unknown init '" + s + "'");
}

ppc_dataset_format parse_format(const std::string& name, const std::string& path) {
  if (name == "csv") return PPC_FORMAT_CSV;
  if (name == "raw_f32") return PPC_FORMAT_RAW_F32;
  if (name != "auto") invalid("unknown data format '" + name + "'");
  const auto ext = std::filesystem::path(path).extension().string();
  if (ext == ".f32" || ext == ".raw" || ext == ".bin") return PPC_FORMAT_RAW_F32;
  return PPC_FORMAT_CSV;
}

ppc_affinity_config affinity_of(const RunConfig& c) {
  ppc_affinity_config a;
  ppc_affinity_config_default(&a);
  a.metric = parse_metric(c.metric);
  if (c.affinity == "class") {
    if (c.radius || c.avg_neighbors) {
      invalid("radius and avg-neighbors only apply to radius affinity");
    }
    a.mode = PPC_AFFINITY_CLASS;
  } else if (c.affinity == "radius") {
    a.mode = PPC_AFFINITY_RADIUS;
    if (c.radius.has_value() == c.avg_neighbors.has_value()) {
      invalid("radius affinity needs exactly one of radius or avg-neighbors");
    }
    if (c.radius) {
      if (!(*c.radius >= 0.0)) invalid("radius must be non-negative");
      a.radius = *c.radius;
    } else {
      if (!(*c.avg_neighbors > 0.0)) invalid("avg-neighbors must be positive");
      a.target_avg_neighbors = *c.avg_neighbors;
    }
  } else {
    invalid("unknown affinity '" + c.affinity + "' (expected class or radius)");
  }
  return a;
}

ppc_train_config train_config_of(const RunConfig& c) {
  if (c.bits < 1) invalid("bits must be at least 1");
  if (c.restarts < 1) invalid("restarts must be at least 1");
  ppc_train_config t;
  ppc_train_config_default(&t);
  t.max_bits = c.bits;
  t.target_empirical_loss = c.target_empirical_loss;
  t.update = parse_update(c.update);
  t.init = parse_init(c.init);
  t.restarts = c.restarts;
  t.seed = c.seed;
  t.max_points = c.max_points;
  t.max_vector_iterations = c.max_vector_iterations;
  t.max_bit_sweeps = c.max_bit_sweeps;
  t.eigen_tolerance = c.eigen_tolerance;
  t.kernel_sigma = c.kernel_sigma;
  t.kernel_ridge = c.kernel_ridge;
  t.kernel_centers = c.kernel_centers;
  t.kernel_max_iterations = c.kernel_max_iterations;
  t.kernel_tolerance = c.kernel_tolerance;
  return t;
}

Dataset load_data(const std::string& path, const std::string& format) {
  if (path.empty()) usage_error("no dataset given (--data or config 'data')");
  ppc_dataset* raw = nullptr;
  check(ppc_dataset_load(path.c_str(), parse_format(format, path), &raw));
  return Dataset(raw);
}

Labels make_labels(const ppc_dataset* data, const RunConfig& c) {
  const auto a = affinity_of(c);
  ppc_labels* raw = nullptr;
  check(ppc_labels_make(data, &a, &raw));
  return Labels(raw);
}

Codes load_codes(const std::string& path) {
  ppc_codes* raw = nullptr;
  check(ppc_codes_load(path.c_str(), &raw));
  return Codes(raw);
}

Model load_model(const std::string& path) {
  ppc_model* raw = nullptr;
  check(ppc_model_load(path.c_str(), &raw));
  return Model(raw);
}

std::string code_id(const ppc_codes* codes, std::size_t i) {
  std::size_t needed = 0;
  check(ppc_codes_id(codes, i, nullptr, 0, &needed));
  std::string id(needed + 1, '\0');
  check(ppc_codes_id(codes, i, id.data(), id.size(), &needed));
  id.resize(needed);
  return id;
}

std::string sibling(const std::string& path, const std::string& suffix) {
  auto p = std::filesystem::path(path);
  p.replace_extension(suffix);
  return p.string();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- subcommands ----

struct SynthArgs {
  std::string kind = "blobs";
  std::size_t n = 1000;
  std::size_t dim = 2;
  std::size_t blobs = 4;
  double spread = 5.0;
  double sigma = 1.0;
  double box = 50.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "auto";
};

int cmd_synth(const SynthArgs& a) {
  ppc_dataset* raw = nullptr;
  if (a.kind == "blobs") {
    check(ppc_dataset_synth_blobs(a.n, a.dim, a.blobs, a.spread, a.sigma, a.seed, &raw));
  } else if (a.kind == "uniform2d") {
    check(ppc_dataset_synth_2d(a.n, a.box, a.seed, &raw));
  } else {
    invalid("unknown synth kind '" + a.kind + "' (expected blobs or uniform2d)");
  }
  Dataset data(raw);
  check(ppc_dataset_save(data.get(), a.out.c_str(), parse_format(a.format, a.out)));
  std::cout << "wrote " << ppc_dataset_rows(data.get()) << " x "
            << ppc_dataset_dims(data.get()) << " to " << a.out << "\n";
  return 0;
}

struct LogSink {
  std::ofstream out;
};

void write_log_line(const ppc_bit_record* r, void* user) {
  auto* sink = static_cast<LogSink*>(user);
  nlohmann::ordered_json line;
  line["bit"] = r->bit;
  line["alpha"] = r->alpha;
  line["beta"] = r->beta;
  line["empirical_loss"] = r->empirical_loss;
  line["relaxed_loss"] = r->relaxed_loss;
  line["solver_objective"] = r->solver_objective;
  line["iterations"] = r->iterations;
  sink->out << line.dump() << '\n';
}

int cmd_train(const Overrides& o, std::string out, std::string codes_path,
              std::string log_path) {
  RunConfig c = resolve(o);
  if (out.empty()) out = c.out;
  if (codes_path.empty()) codes_path = c.codes;
  if (log_path.empty()) log_path = c.log;
  if (out.empty()) usage_error("no model output path (--out or config 'out')");
  if (codes_path.empty()) codes_path = sibling(out, ".codes");
  if (log_path.empty()) log_path = sibling(out, ".log.jsonl");

  const auto cfg = train_config_of(c);
  const auto data = load_data(c.data, c.data_format);
  const auto labels = make_labels(data.get(), c);

  LogSink sink;
  sink.out.open(log_path, std::ios::binary);
  if (!sink.out) throw CliError(kExitRuntime, "cannot write log file: " + log_path);
  ppc_model* model_raw = nullptr;
  ppc_codes* codes_raw = nullptr;
  check(ppc_train(data.get(), labels.get(), &cfg, write_log_line, &sink, &model_raw,
                  &codes_raw));
  Model model(model_raw);
  Codes codes(codes_raw);
  sink.out.close();
  if (!sink.out) throw CliError(kExitRuntime, "write failed: " + log_path);
  check(ppc_model_save(model.get(), out.c_str()));
  check(ppc_codes_save(codes.get(), codes_path.c_str()));
  std::cout << "bits " << ppc_model_bits(model.get()) << "\nalpha "
            << fmt(ppc_model_alpha(model.get())) << "\nmodel " << out << "\ncodes "
            << codes_path << "\nlog " << log_path << "\n";
  return 0;
}

int cmd_encode(const std::string& model_path, const Overrides& o,
               const std::string& out) {
  RunConfig c = resolve(o);
  const auto model = load_model(model_path);
  const auto data = load_data(c.data, c.data_format);
  ppc_codes* raw = nullptr;
  check(ppc_encode(model.get(), data.get(), &raw));
  Codes codes(raw);
  check(ppc_codes_save(codes.get(), out.c_str()));
  std::cout << "encoded " << ppc_codes_points(codes.get()) << " points with "
            << ppc_codes_bits(codes.get()) << " bits to " << out << "\n";
  return 0;
}

struct QueryArgs {
  std::string index;
  std::string queries;
  std::string model;
  std::optional<double> alpha;
  std::optional<std::size_t> k;
  std::optional<std::size_t> query;
};

int cmd_query(const QueryArgs& a, const Overrides& o) {
  if (a.alpha && a.k) usage_error("--alpha and --k are mutually exclusive");
  const auto index = load_codes(a.index);
  RunConfig c = resolve(o);
  Codes queries;
  double alpha = 0.0;
  std::optional<Model> model;
  if (!a.model.empty()) model = load_model(a.model);
  if (!a.queries.empty()) {
    queries = load_codes(a.queries);
  } else if (!c.data.empty()) {
    if (!model) usage_error("encoding --data queries needs --model");
    const auto data = load_data(c.data, c.data_format);
    ppc_codes* raw = nullptr;
    check(ppc_encode(model->get(), data.get(), &raw));
    queries.reset(raw);
  } else {
    usage_error("no queries given (--queries or --data with --model)");
  }
  if (a.alpha) {
    alpha = *a.alpha;
  } else if (!a.k) {
    if (!model) usage_error("give --alpha, --k or a --model supplying alpha");
    alpha = ppc_model_alpha(model->get());
  }

  const std::size_t nq = ppc_codes_points(queries.get());
  std::size_t first = 0, last = nq;
  if (a.query) {
    if (*a.query >= nq) invalid("--query index out of range");
    first = *a.query;
    last = first + 1;
  }
  std::vector<ppc_neighbor> found;
  for (std::size_t q = first; q < last; ++q) {
    std::size_t count = 0;
    const auto run = [&](ppc_neighbor* out, std::size_t cap) {
      if (a.k) {
        check(ppc_query_knn(index.get(), queries.get(), q, *a.k, out, cap, &count));
      } else {
        check(ppc_query_radius(index.get(), queries.get(), q, alpha, out, cap, &count));
      }
    };
    run(nullptr, 0);
    found.resize(count);
    run(found.data(), found.size());
    std::cout << code_id(queries.get(), q) << ":";
    for (const auto& nb : found) std::cout << ' ' << code_id(index.get(), nb.index);
    std::cout << '\n';
  }
  return 0;
}

struct EvalArgs {
  std::string codes;
  std::string out_dir;
  std::size_t bins = 20;
  std::optional<std::uint64_t> random_baseline;
};

int cmd_eval(const EvalArgs& a, const Overrides& o) {
  RunConfig c = resolve(o);
  const auto codes = load_codes(a.codes);
  const auto data = load_data(c.data, c.data_format);
  const auto labels = make_labels(data.get(), c);
  if (a.bins < 1) invalid("--bins must be at least 1");
  std::filesystem::create_directories(a.out_dir);
  const auto dir = std::filesystem::path(a.out_dir);

  double ppc_auc = 0.0;
  check(ppc_eval_write_pr_csv(codes.get(), labels.get(), (dir / "pr.csv").c_str(),
                              &ppc_auc));
  check(ppc_eval_write_histogram_csv(codes.get(), data.get(), parse_metric(c.metric),
                                     a.bins, (dir / "histogram.csv").c_str()));
  const std::size_t p = ppc_codes_bits(codes.get());
  std::ofstream auc(dir / "auc.csv", std::ios::binary);
  if (!auc) throw CliError(kExitRuntime, "cannot write " + (dir / "auc.csv").string());
  auc << "codes,bits,auc\nppc," << p << ',' << fmt(ppc_auc) << '\n';
  std::cout << "auc " << fmt(ppc_auc) << '\n';
  if (a.random_baseline) {
    ppc_codes* raw = nullptr;
    check(ppc_codes_random(ppc_codes_points(codes.get()), p, *a.random_baseline, &raw));
    Codes random(raw);
    double random_auc = 0.0;
    check(ppc_eval_pr(random.get(), labels.get(), nullptr, 0, nullptr, &random_auc));
    auc << "random," << p << ',' << fmt(random_auc) << '\n';
    std::cout << "random_auc " << fmt(random_auc) << '\n';
  }
  if (!auc) throw CliError(kExitRuntime, "write failed: auc.csv");
  return 0;
}

struct CutArgs {
  std::string matrix;
  std::string format = "auto";
  std::string update = "bit";
  std::string init = "random";
  std::size_t restarts = 4;
  std::uint64_t seed = 0;
  bool exhaustive = false;
};

int cmd_cut(const CutArgs& a) {
  ppc_matrix_format f = PPC_MATRIX_AUTO;
  if (a.format == "dense") {
    f = PPC_MATRIX_DENSE;
  } else if (a.format == "triples") {
    f = PPC_MATRIX_TRIPLES;
  } else if (a.format != "auto") {
    invalid("unknown matrix format '" + a.format + "'");
  }
  if (a.restarts < 1) invalid("restarts must be at least 1");
  ppc_matrix* raw = nullptr;
  check(ppc_matrix_load(a.matrix.c_str(), f, &raw));
  Matrix m(raw);
  const std::size_t n = ppc_matrix_size(m.get());

  ppc_cut_options opts;
  ppc_cut_options_default(&opts);
  opts.update = parse_update(a.update);
  opts.init = parse_init(a.init);
  opts.restarts = a.restarts;
  opts.seed = a.seed;
  std::vector<int8_t> bits(n);
  ppc_cut_report report;
  check(ppc_cut_solve(m.get(), &opts, bits.data(), &report));

  const auto print_bits = [](const std::vector<int8_t>& b) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::cout << (i ? " " : "") << static_cast<int>(b[i]);
    }
    std::cout << '\n';
  };
  std::cout << "objective " << fmt(report.objective) << "\niterations "
            << report.iterations << "\nconverged " << report.converged
            << "\nassignment ";
  print_bits(bits);
  if (a.exhaustive) {
    std::vector<int8_t> best(n);
    double value = 0.0;
    check(ppc_cut_exhaustive(m.get(), best.data(), &value));
    std::cout << "exhaustive_objective " << fmt(value) << "\nexhaustive_assignment ";
    print_bits(best);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proximity Preserving Codes: train, encode and query binary codes"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Write a synthetic dataset");
  s->add_option("--kind", synth.kind, "blobs | uniform2d");
  s->add_option("--n", synth.n, "Number of points");
  s->add_option("--dim", synth.dim, "Dimension (blobs)");
  s->add_option("--blobs", synth.blobs, "Number of blobs (classes)");
  s->add_option("--spread", synth.spread, "Blob centers in [-spread, spread]^dim");
  s->add_option("--sigma", synth.sigma, "Per-coordinate blob deviation");
  s->add_option("--box", synth.box, "Half-width of the uniform2d square");
  s->add_option("--seed", synth.seed, "Seed");
  s->add_option("--format", synth.format, "auto | csv | raw_f32");
  s->add_option("--out", synth.out, "Output dataset path")->required();

  Overrides train_o;
  std::string train_out, train_codes, train_log;
  auto* t = app.add_subcommand("train", "Train a hash model");
  add_affinity_flags(t, train_o);
  add_train_flags(t, train_o);
  t->add_option("--out", train_out, "Model JSON path");
  t->add_option("--codes", train_codes, "Training codes path (default <out>.codes)");
  t->add_option("--log", train_log, "JSON-lines log (default <out>.log.jsonl)");

  Overrides enc_o;
  std::string enc_model, enc_out;
  auto* e = app.add_subcommand("encode", "Map features to codes with a model");
  e->add_option("--model", enc_model, "Model JSON")->required();
  e->add_option("--data", enc_o.data, "Feature file")->required();
  e->add_option("--data-format", enc_o.data_format, "auto | csv | raw_f32");
  e->add_option("--out", enc_out, "Codes output path")->required();

  QueryArgs query;
  Overrides query_o;
  auto* q = app.add_subcommand("query", "Radius or kNN lookups; prints id lists");
  q->add_option("--index", query.index, "Database codes file")->required();
  q->add_option("--queries", query.queries, "Query codes file");
  q->add_option("--data", query_o.data, "Query features (needs --model)");
  q->add_option("--data-format", query_o.data_format, "auto | csv | raw_f32");
  q->add_option("--model", query.model, "Model for encoding and default alpha");
  q->add_option("--alpha", query.alpha, "Radius in doubled Hamming units");
  q->add_option("--k", query.k, "Number of nearest neighbors");
  q->add_option("--query", query.query, "Only run this query row");

  EvalArgs eval;
  Overrides eval_o;
  auto* v = app.add_subcommand("eval", "Write PR, AUC and joint-histogram CSVs");
  add_affinity_flags(v, eval_o);
  v->add_option("--codes", eval.codes, "Codes of the dataset rows")->required();
  v->add_option("--out-dir", eval.out_dir, "Output directory")->required();
  v->add_option("--bins", eval.bins, "Distance bins of the joint histogram");
  v->add_option("--random-baseline", eval.random_baseline,
                "Also score random codes drawn from this seed");

  CutArgs cut;
  auto* c = app.add_subcommand("cut", "Solve max b^T W b for a signed matrix");
  c->add_option("matrix", cut.matrix, "Matrix CSV (dense or i,j,w triples)")->required();
  c->add_option("--format", cut.format, "auto | dense | triples");
  c->add_option("--update", cut.update, "bit | vector");
  c->add_option("--init", cut.init,
                "random | fiedler | signed-laplacian | random-projection");
  c->add_option("--restarts", cut.restarts, "Initial guesses");
  c->add_option("--seed", cut.seed, "Seed");
  c->add_flag("--exhaustive", cut.exhaustive, "Also print the exact optimum (n <= 22)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*s) return cmd_synth(synth);
    if (*t) return cmd_train(train_o, train_out, train_codes, train_log);
    if (*e) return cmd_encode(enc_model, enc_o, enc_out);
    if (*q) return cmd_query(query, query_o);
    if (*v) return cmd_eval(eval, eval_o);
    if (*c) return cmd_cut(cut);
  } catch (const CliError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return err.exit_code;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
