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

#include "core/affinity.hpp"

namespace ppc {

enum class DatasetFormat { kCsv, kRawF32 };

/// CSV: optional header, columns `id,label,f0..` or `f0..`. A header is
/// detected when the first line holds a non-numeric token; `id` and `label`
/// columns are recognized by name, every other column is a feature.
///
/// raw_f32: little-endian float32 payload, row-major, with a JSON sidecar
/// at `<path>.json` holding {"n", "d", "labels"?}.
Dataset load_dataset(const std::string& path, DatasetFormat format);

void save_dataset(const Dataset& data, const std::string& path,
                  DatasetFormat format);

}  // namespace ppc
