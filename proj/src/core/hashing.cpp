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

#include "core/hashing.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace ppc {

void HashModel::validate() const {
  require(!classifiers.empty(), "hash model has no bits (p = 0)",
          ErrorCode::kValidation);
  const auto basis = classifiers.front().shared_basis();
  for (const auto& c : classifiers) {
    require(c.shared_basis() == basis,
            "all classifiers of a model must share one kernel basis",
            ErrorCode::kValidation);
  }
  const double p = static_cast<double>(classifiers.size());
  require(alpha >= -1.0 && alpha <= 2.0 * p - 1.0,
          "model alpha outside [-1, 2p-1]", ErrorCode::kValidation);
}

HashTrainResult train_with_hashing(const Dataset& data,
                                   const ProximityLabels& labels,
                                   const HashingConfig& config,
                                   const BitCallback& on_bit) {
  config.train.validate();
  data.validate(2);
  require(labels.n() == data.n, "labels and data disagree on point count");
  require(data.n <= config.train.max_points,
          "point count " + std::to_string(data.n) + " exceeds max_points " +
              std::to_string(config.train.max_points),
          ErrorCode::kValidation);

  KernelConfig kernel = config.kernel;
  kernel.seed = derive_seed(config.train.seed, "kernel");
  const auto design = make_design(data, make_kernel_basis(data, kernel));

  HashTrainResult result{{}, CodeMatrix(data.n), TrainerState(data.n)};
  for (std::size_t bit = 1; bit <= config.train.max_bits; ++bit) {
    const auto proposal = propose_bit(result.state, labels, config.train);
    auto fit = fit_bit_classifier(design, proposal.bits, kernel);
    const auto loss = commit_bit(result.state, labels, fit.predictions);
    result.codes.append(fit.predictions);
    result.model.classifiers.push_back(std::move(fit.classifier));
    result.model.train_bit_accuracy.push_back(fit.accuracy);
    if (on_bit) {
      on_bit({bit, loss.alpha, result.state.beta_hat, loss.empirical,
              loss.relaxed, proposal.objective, proposal.iterations,
              fit.accuracy});
    }
    if (loss.best_empirical <= config.train.target_empirical_loss) break;
  }
  result.model.alpha = result.state.alpha_hat;
  return result;
}

CodeMatrix encode(const HashModel& model, const Dataset& data) {
  model.validate();
  const auto& basis = model.classifiers.front().basis();
  require(data.d == basis.d,
          "data has " + std::to_string(data.d) + " features, model expects " +
              std::to_string(basis.d));
  CodeMatrix codes(data.n);
  std::vector<double> k(basis.m);
  std::vector<BitVector> rows(model.p(), BitVector(data.n));
  for (std::size_t i = 0; i < data.n; ++i) {
    basis.evaluate(data.row(i), k);
    for (std::size_t b = 0; b < model.p(); ++b) {
      rows[b].set(i, model.classifiers[b].decision_from_kernel(k) >= 0.0 ? 1 : -1);
    }
  }
  for (const auto& r : rows) codes.append(r);
  return codes;
}

namespace {

void put_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void put_array(std::string& out, std::span<const double> values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    put_double(out, values[i]);
  }
  out += ']';
}

}  // namespace

std::string model_to_json(const HashModel& model) {
  model.validate();
  const auto& basis = model.classifiers.front().basis();
  std::string out;
  out += "{\"version\":1,\"p\":" + std::to_string(model.p()) + ",\"alpha\":";
  put_double(out, model.alpha);
  out += ",\"kernel\":{\"type\":\"gaussian\",\"sigma\":";
  put_double(out, basis.sigma);
  out += "},\"centers\":[";
  for (std::size_t j = 0; j < basis.m; ++j) {
    if (j) out += ',';
    put_array(out, basis.center(j));
  }
  out += "],\"bits\":[";
  for (std::size_t b = 0; b < model.p(); ++b) {
    if (b) out += ',';
    out += "{\"coeffs\":";
    put_array(out, model.classifiers[b].coefficients());
    out += ",\"bias\":";
    put_double(out, model.classifiers[b].bias());
    out += '}';
  }
  out += "]}\n";
  return out;
}

HashModel model_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kFormat, std::string("model is not valid JSON: ") + e.what());
  }
  HashModel model;
  try {
    static const char* kKeys[] = {"version", "p", "alpha", "kernel", "centers",
                                  "bits"};
    for (const auto& [key, _] : doc.items()) {
      bool known = false;
      for (const char* k : kKeys) known = known || key == k;
      require(known, "unknown model key '" + key + "'", ErrorCode::kFormat);
    }
    require(doc.at("version").get<int>() == 1, "unsupported model version",
            ErrorCode::kFormat);
    const auto& kernel = doc.at("kernel");
    require(kernel.at("type").get<std::string>() == "gaussian",
            "unsupported kernel type", ErrorCode::kFormat);

    auto basis = std::make_shared<KernelBasis>();
    basis->sigma = kernel.at("sigma").get<double>();
    require(basis->sigma > 0.0, "kernel sigma must be positive",
            ErrorCode::kFormat);
    const auto& centers = doc.at("centers");
    require(centers.is_array() && !centers.empty(), "model has no centers",
            ErrorCode::kFormat);
    basis->m = centers.size();
    basis->d = centers.front().size();
    require(basis->d >= 1, "centers must have at least one feature",
            ErrorCode::kFormat);
    for (const auto& c : centers) {
      require(c.size() == basis->d, "centers have inconsistent dimensions",
              ErrorCode::kFormat);
      for (const auto& v : c) basis->centers.push_back(v.get<double>());
    }

    std::shared_ptr<const KernelBasis> shared = basis;
    for (const auto& bit : doc.at("bits")) {
      auto coeffs = bit.at("coeffs").get<std::vector<double>>();
      require(coeffs.size() == shared->m,
              "bit coefficient count does not match centers", ErrorCode::kFormat);
      model.classifiers.emplace_back(shared, std::move(coeffs),
                                     bit.at("bias").get<double>());
    }
    require(doc.at("p").get<std::size_t>() == model.classifiers.size(),
            "model p does not match the number of bits", ErrorCode::kFormat);
    model.alpha = doc.at("alpha").get<double>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kFormat, std::string("malformed model: ") + e.what());
  }
  model.validate();
  return model;
}

void save_model(const HashModel& model, const std::string& path) {
  const std::string text = model_to_json(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write model file: " + path);
  out << text;
  if (!out) fail(ErrorCode::kIo, "write failed: " + path);
}

HashModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open model file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace ppc
