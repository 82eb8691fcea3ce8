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

#include <string>
#include <vector>

#include "core/affinity.hpp"
#include "core/kernel_classifier.hpp"
#include "core/trainer.hpp"

namespace ppc {

/// p kernel classifiers sharing one basis plus the retrieval threshold.
struct HashModel {
  std::vector<KernelClassifier> classifiers;
  double alpha = 0.0;
  /// In-sample agreement of each classifier with its optimized bit. Not
  /// persisted; empty for models read from disk.
  std::vector<double> train_bit_accuracy;

  std::size_t p() const { return classifiers.size(); }
  /// Throws kValidation on an empty model, mixed bases or alpha outside
  /// [-1, 2p - 1].
  void validate() const;
};

struct HashingConfig {
  TrainConfig train;
  KernelConfig kernel;
};

struct HashTrainResult {
  HashModel model;
  /// Classifier-produced codes of the training points.
  CodeMatrix codes;
  TrainerState state;
};

/// Bit-sequential training where each optimized bit is replaced by its
/// classifier's in-sample predictions before accumulation, so later bits
/// correct earlier classifier errors.
HashTrainResult train_with_hashing(const Dataset& data,
                                   const ProximityLabels& labels,
                                   const HashingConfig& config,
                                   const BitCallback& on_bit = {});

/// Column j is (h^1(x_j), ..., h^p(x_j)).
CodeMatrix encode(const HashModel& model, const Dataset& data);

/// Versioned JSON; doubles written with 17 significant digits.
std::string model_to_json(const HashModel& model);
HashModel model_from_json(const std::string& text);
void save_model(const HashModel& model, const std::string& path);
HashModel load_model(const std::string& path);

}  // namespace ppc
