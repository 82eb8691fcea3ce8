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
#include <string_view>

#include "core/signed_cut.hpp"

namespace ppc {

enum class MatrixFormat { kAuto, kDense, kTriples };

MatrixFormat parse_matrix_format(std::string_view name);

/// Reads a signed weight matrix from CSV. Dense files hold n rows of n
/// values; triple files hold `i,j,w` lines with 0-based indices, each
/// setting both W_ij and W_ji. Auto picks dense when the file is square.
/// Blank lines and lines starting with '#' are skipped.
SignedWeightMatrix load_weight_matrix(const std::string& path,
                                      MatrixFormat format = MatrixFormat::kAuto);

}  // namespace ppc
