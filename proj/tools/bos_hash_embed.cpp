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

// bos-hash-embed: a dependency-free embedding provider. Reads sentence-group
// records (JSONL with a "text" member) on stdin and writes one EMB1 row per
// record to the output path: signed feature hashing of the group's words.
// Useful for smoke tests and as a template for real providers.

#include <cctype>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bos/bos.h"
#include "json.hpp"

namespace {

std::uint64_t Fnv1a(const std::string &s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::string> Words(const std::string &text) {
  std::vector<std::string> words;
  std::string current;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80) {
      current += static_cast<char>(std::tolower(u));
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Feature-hashing embedding provider (EMB1 writer)"};
  std::string out;
  std::size_t dim = 64;
  bool constant = false;
  bool drop_last = false;
  bool fail = false;
  app.add_option("out", out, "EMB1 output path")->required();
  app.add_option("--dim", dim, "vector dimension")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_flag("--constant", constant, "emit (1, 1, ..., 1) for every group");
  app.add_flag("--drop-last", drop_last, "omit the final row");
  app.add_flag("--fail", fail, "exit with status 1");
  CLI11_PARSE(app, argc, argv);

  if (fail) {
    std::cerr << "bos-hash-embed: failing on request\n";
    return 1;
  }

  std::vector<float> data;
  std::size_t rows = 0;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    auto record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.contains("text") || !record["text"].is_string()) {
      std::cerr << "bos-hash-embed: bad input record " << rows << '\n';
      return 2;
    }
    std::vector<float> v(dim, 0.0f);
    if (constant) {
      v.assign(dim, 1.0f);
    } else {
      auto words = Words(record["text"].get<std::string>());
      if (words.empty()) words.push_back("<empty>");
      for (const auto &w : words) {
        const std::uint64_t h = Fnv1a(w);
        v[h % dim] += (h >> 63) ? -1.0f : 1.0f;
      }
      bool all_zero = true;
      for (float x : v) all_zero = all_zero && x == 0.0f;
      if (all_zero) v[Fnv1a(words.front()) % dim] = 1.0f;
    }
    data.insert(data.end(), v.begin(), v.end());
    ++rows;
  }
  if (drop_last && rows > 0) {
    --rows;
    data.resize(rows * dim);
  }

  bos_embeddings *emb = nullptr;
  if (bos_embeddings_from_rows(data.data(), rows, dim, &emb) != BOS_OK ||
      bos_embeddings_save(emb, nullptr, out.c_str()) != BOS_OK) {
    std::cerr << "bos-hash-embed: " << bos_last_error() << '\n';
    bos_embeddings_free(emb);
    return 1;
  }
  bos_embeddings_free(emb);
  return 0;
}
