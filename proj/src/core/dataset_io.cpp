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

#include "core/dataset_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/byte_io.hpp"
#include "core/error.hpp"

namespace ppc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

bool parse_double(std::string_view token, double& value) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  return ec == std::errc() && ptr == end && !token.empty();
}

bool parse_int(std::string_view token, std::int64_t& value) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  return ec == std::errc() && ptr == end && !token.empty();
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open dataset file: " + path);

  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  int id_col = -1;
  int label_col = -1;
  std::size_t columns = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (first && line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB &&
        static_cast<unsigned char>(line[2]) == 0xBF) {
      line.erase(0, 3);
    }
    if (trim(line).empty()) continue;
    auto tokens = split_csv(line);

    if (first) {
      first = false;
      columns = tokens.size();
      bool header = false;
      for (auto t : tokens) {
        double v;
        if (!parse_double(t, v) && lower(t) != "nan" && lower(t) != "inf" &&
            lower(t) != "-inf") {
          header = true;
        }
      }
      if (header) {
        for (std::size_t c = 0; c < tokens.size(); ++c) {
          const std::string name = lower(tokens[c]);
          if (name == "id") id_col = static_cast<int>(c);
          if (name == "label") label_col = static_cast<int>(c);
        }
        continue;
      }
    }

    if (tokens.size() != columns) {
      fail(ErrorCode::kFormat, "row " + std::to_string(data.n) + " (line " +
                                   std::to_string(line_no) + ") has " +
                                   std::to_string(tokens.size()) +
                                   " columns, expected " +
                                   std::to_string(columns));
    }
    const std::size_t row = data.n;
    for (std::size_t c = 0; c < tokens.size(); ++c) {
      if (static_cast<int>(c) == id_col) {
        data.ids.emplace_back(tokens[c]);
        continue;
      }
      if (static_cast<int>(c) == label_col) {
        std::int64_t lbl;
        if (!parse_int(tokens[c], lbl)) {
          fail(ErrorCode::kFormat, "row " + std::to_string(row) +
                                       ": bad class label '" +
                                       std::string(tokens[c]) + "'");
        }
        if (!data.class_labels) data.class_labels.emplace();
        data.class_labels->push_back(lbl);
        continue;
      }
      double v;
      if (!parse_double(tokens[c], v)) {
        fail(ErrorCode::kFormat, "row " + std::to_string(row) +
                                     ": cannot parse '" +
                                     std::string(tokens[c]) + "'");
      }
      if (!std::isfinite(v)) {
        fail(ErrorCode::kValidation,
             "non-finite feature value in row " + std::to_string(row));
      }
      data.features.push_back(v);
    }
    ++data.n;
  }
  if (data.n == 0) fail(ErrorCode::kFormat, "dataset file has no rows: " + path);
  const std::size_t meta = (id_col >= 0) + (label_col >= 0);
  data.d = columns - meta;
  if (data.ids.empty()) {
    data.ids.resize(data.n);
    for (std::size_t i = 0; i < data.n; ++i) data.ids[i] = std::to_string(i);
  }
  data.validate();
  return data;
}

std::string sidecar_path(const std::string& path) { return path + ".json"; }

Dataset load_raw_f32(const std::string& path) {
  std::ifstream meta_in(sidecar_path(path));
  if (!meta_in) {
    fail(ErrorCode::kIo, "cannot open raw_f32 sidecar: " + sidecar_path(path));
  }
  nlohmann::json meta;
  try {
    meta_in >> meta;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kFormat, std::string("bad raw_f32 sidecar: ") + e.what());
  }
  Dataset data;
  try {
    data.n = meta.at("n").get<std::size_t>();
    data.d = meta.at("d").get<std::size_t>();
    if (meta.contains("labels")) {
      data.class_labels = meta["labels"].get<std::vector<std::int64_t>>();
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kFormat, std::string("bad raw_f32 sidecar: ") + e.what());
  }

  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open dataset file: " + path);
  in.seekg(0, std::ios::end);
  const auto bytes = static_cast<std::uint64_t>(in.tellg());
  in.seekg(0);
  const std::uint64_t expected = std::uint64_t{data.n} * data.d * 4;
  if (bytes != expected) {
    fail(ErrorCode::kFormat,
         "raw_f32 payload has " + std::to_string(bytes / 4) +
             " floats (" + std::to_string(bytes) + " bytes), sidecar says " +
             std::to_string(data.n) + "x" + std::to_string(data.d));
  }
  data.features.resize(data.n * data.d);
  for (std::size_t k = 0; k < data.features.size(); ++k) {
    float v;
    le::read(in, v);
    if (!std::isfinite(v)) {
      fail(ErrorCode::kValidation,
           "non-finite feature value in row " + std::to_string(k / data.d));
    }
    data.features[k] = v;
  }
  data.ids.resize(data.n);
  for (std::size_t i = 0; i < data.n; ++i) data.ids[i] = std::to_string(i);
  data.validate();
  return data;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool default_ids(const Dataset& data) {
  for (std::size_t i = 0; i < data.ids.size(); ++i) {
    if (data.ids[i] != std::to_string(i)) return false;
  }
  return true;
}

void save_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write dataset file: " + path);
  const bool write_id = data.class_labels.has_value() || !default_ids(data);
  std::string header;
  if (write_id) header += "id,";
  if (data.class_labels) header += "label,";
  for (std::size_t t = 0; t < data.d; ++t) {
    header += "f" + std::to_string(t) + (t + 1 < data.d ? "," : "");
  }
  out << header << '\n';
  for (std::size_t i = 0; i < data.n; ++i) {
    if (write_id) {
      out << (data.ids.empty() ? std::to_string(i) : data.ids[i]) << ',';
    }
    if (data.class_labels) out << (*data.class_labels)[i] << ',';
    const auto r = data.row(i);
    for (std::size_t t = 0; t < data.d; ++t) {
      out << format_double(r[t]) << (t + 1 < data.d ? "," : "");
    }
    out << '\n';
  }
  if (!out) fail(ErrorCode::kIo, "write failed: " + path);
}

void save_raw_f32(const Dataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write dataset file: " + path);
  for (double v : data.features) le::write(out, static_cast<float>(v));
  nlohmann::ordered_json meta;
  meta["n"] = data.n;
  meta["d"] = data.d;
  if (data.class_labels) meta["labels"] = *data.class_labels;
  std::ofstream meta_out(sidecar_path(path));
  if (!meta_out) fail(ErrorCode::kIo, "cannot write " + sidecar_path(path));
  meta_out << meta.dump() << '\n';
  if (!out || !meta_out) fail(ErrorCode::kIo, "write failed: " + path);
}

}  // namespace

Dataset load_dataset(const std::string& path, DatasetFormat format) {
  return format == DatasetFormat::kCsv ? load_csv(path) : load_raw_f32(path);
}

void save_dataset(const Dataset& data, const std::string& path,
                  DatasetFormat format) {
  data.validate();
  if (format == DatasetFormat::kCsv) {
    save_csv(data, path);
  } else {
    save_raw_f32(data, path);
  }
}

}  // namespace ppc
