// Copyright 2026 The bos Authors.
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

#include "bos/model_io.hpp"

#include <fstream>
#include <string>

#include "bos/error.hpp"

namespace bos {

namespace {

constexpr const char *kModelFormat = "bos-model-1";

nlohmann::ordered_json MatrixToJson(const Matrix &m) {
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (double x : m.row(r)) row.push_back(x);
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix MatrixFromJson(const nlohmann::json &j, const char *field) {
  if (!j.is_array()) throw Error(ErrorCode::kFormat, std::string(field) + " must be an array");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j[0].size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw Error(ErrorCode::kFormat, std::string(field) + " rows must have equal length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) {
        throw Error(ErrorCode::kFormat, std::string(field) + " must hold numbers");
      }
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

}  // namespace

nlohmann::ordered_json ModelToJson(const TopicModel &model,
                                   const nlohmann::ordered_json &provenance) {
  nlohmann::ordered_json j;
  j["format"] = kModelFormat;
  auto &p = j["params"];
  p["k"] = model.params.k;
  p["alpha"] = model.params.alpha;
  p["epochs"] = model.params.epochs;
  p["c0"] = model.params.InitialSmoothing();
  p["n_s"] = model.params.group_size;
  p["seed"] = model.params.seed;
  j["doc_ids"] = model.doc_ids;
  j["topic_vectors"] = MatrixToJson(model.topic_vectors);
  j["topic_doc"] = MatrixToJson(model.topic_doc);
  j["assignments"] = model.assignments;
  auto log = nlohmann::ordered_json::array();
  for (const auto &e : model.epoch_log) {
    log.push_back({{"epoch", e.epoch}, {"c", e.smoothing}, {"changed", e.changed}});
  }
  j["epoch_log"] = std::move(log);
  if (!provenance.is_null()) j["config"] = provenance;
  return j;
}

TopicModel ModelFromJson(const nlohmann::json &j) {
  try {
    if (!j.is_object() || j.value("format", "") != kModelFormat) {
      throw Error(ErrorCode::kFormat, "not a bos model file");
    }
    TopicModel model;
    const auto &p = j.at("params");
    model.params.k = p.at("k").get<int>();
    model.params.alpha = p.at("alpha").get<double>();
    model.params.epochs = p.at("epochs").get<int>();
    model.params.group_size = p.at("n_s").get<int>();
    model.params.seed = p.at("seed").get<std::uint64_t>();
    model.doc_ids = j.at("doc_ids").get<std::vector<std::string>>();
    model.topic_vectors = MatrixFromJson(j.at("topic_vectors"), "topic_vectors");
    model.topic_doc = MatrixFromJson(j.at("topic_doc"), "topic_doc");
    model.assignments = j.at("assignments").get<std::vector<int>>();
    for (const auto &e : j.at("epoch_log")) {
      model.epoch_log.push_back({e.at("epoch").get<int>(), e.at("c").get<double>(),
                                 e.at("changed").get<std::size_t>()});
    }
    const auto k = static_cast<std::size_t>(model.params.k);
    if (model.topic_vectors.rows() != k ||
        (model.topic_doc.rows() > 0 && model.topic_doc.cols() != k) ||
        model.topic_doc.rows() != model.doc_ids.size()) {
      throw Error(ErrorCode::kFormat, "model matrices disagree with k or doc_ids");
    }
    for (int t : model.assignments) {
      if (t < 0 || static_cast<std::size_t>(t) >= k) {
        throw Error(ErrorCode::kFormat, "model assignment outside [0, k)");
      }
    }
    return model;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kFormat, std::string("invalid model file: ") + e.what());
  }
}

void WriteJsonFile(const std::filesystem::path &path, const nlohmann::ordered_json &value,
                   int indent) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << value.dump(indent) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

void SaveModel(const std::filesystem::path &path, const TopicModel &model,
               const nlohmann::ordered_json &provenance) {
  WriteJsonFile(path, ModelToJson(model, provenance), -1);
}

TopicModel LoadModel(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open model file " + path.string());
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kFormat, "model file is not valid JSON");
  return ModelFromJson(j);
}

}  // namespace bos
