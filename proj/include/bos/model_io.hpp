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

#ifndef BOS_MODEL_IO_HPP_
#define BOS_MODEL_IO_HPP_

#include <filesystem>

#include "bos/senclu.hpp"
#include "json.hpp"

namespace bos {

// Model file layout:
//   {"format": "bos-model-1", "params": {...}, "doc_ids": [...],
//    "topic_vectors": [[...]], "topic_doc": [[...]], "assignments": [...],
//    "epoch_log": [{"epoch", "c", "changed"}], "config": <provenance>}
// `provenance` is stored verbatim under "config" unless it is null.
nlohmann::ordered_json ModelToJson(const TopicModel &model,
                                   const nlohmann::ordered_json &provenance = nullptr);
// Throws kFormat on a structurally invalid document.
TopicModel ModelFromJson(const nlohmann::json &j);

void SaveModel(const std::filesystem::path &path, const TopicModel &model,
               const nlohmann::ordered_json &provenance = nullptr);
TopicModel LoadModel(const std::filesystem::path &path);

// Writes `value` followed by a newline; indent < 0 writes a single line.
void WriteJsonFile(const std::filesystem::path &path, const nlohmann::ordered_json &value,
                   int indent = 1);

}  // namespace bos

#endif  // BOS_MODEL_IO_HPP_
