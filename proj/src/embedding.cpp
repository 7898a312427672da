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

#include "bos/embedding.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace bos {

namespace {

constexpr std::size_t kHeaderBytes = 16;

std::uint32_t ReadU32(const unsigned char *p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void AppendU32(std::string &out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(std::size_t rows, std::size_t dim,
                                 std::vector<float> data, bool normalized)
    : rows_(rows), dim_(dim), data_(std::move(data)), normalized_(normalized) {
  if (data_.size() != rows_ * dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "embedding data has " + std::to_string(data_.size()) +
                    " values, expected " + std::to_string(rows_) + " x " +
                    std::to_string(dim_));
  }
}

EmbeddingMatrix Normalize(const EmbeddingMatrix &matrix) {
  std::vector<float> data(matrix.data());
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    const double norm = Norm(matrix.row(r));
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw Error(ErrorCode::kDegenerateVector,
                  "embedding row " + std::to_string(r) + " has zero or non-finite norm");
    }
    float *row = data.data() + r * matrix.dim();
    for (std::size_t c = 0; c < matrix.dim(); ++c) {
      row[c] = static_cast<float>(static_cast<double>(row[c]) / norm);
    }
  }
  return EmbeddingMatrix(matrix.rows(), matrix.dim(), std::move(data), true);
}

EmbeddingMatrix ReadEmb1(std::istream &in, Normalization normalization) {
  unsigned char header[kHeaderBytes];
  in.read(reinterpret_cast<char *>(header), kHeaderBytes);
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got < kHeaderBytes) {
    throw Error(ErrorCode::kFormat,
                "truncated EMB1 header at byte offset " + std::to_string(got));
  }
  if (std::memcmp(header, kEmb1Magic, sizeof(kEmb1Magic)) != 0) {
    throw Error(ErrorCode::kFormat, "bad EMB1 magic at byte offset 0");
  }
  const std::uint64_t rows = ReadU32(header + 8);
  const std::uint64_t dim = ReadU32(header + 12);
  if (rows > 0 && dim == 0) {
    throw Error(ErrorCode::kFormat, "EMB1 header declares zero dim for " +
                                        std::to_string(rows) + " rows");
  }
  const std::uint64_t values = rows * dim;
  // Read in chunks so a corrupt header cannot trigger a huge allocation.
  const std::uint64_t want = values * 4;
  std::vector<unsigned char> payload;
  payload.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(want, 1u << 26)));
  char chunk[1 << 16];
  while (payload.size() < want) {
    const auto n = static_cast<std::streamsize>(
        std::min<std::uint64_t>(sizeof(chunk), want - payload.size()));
    in.read(chunk, n);
    const auto g = in.gcount();
    payload.insert(payload.end(), chunk, chunk + g);
    if (g < n) break;
  }
  const std::uint64_t read = payload.size();
  if (read < want) {
    throw Error(ErrorCode::kFormat,
                "truncated EMB1 payload: file ends at byte offset " +
                    std::to_string(kHeaderBytes + read) + ", expected " +
                    std::to_string(kHeaderBytes + want) + " bytes (" +
                    std::to_string(rows) + " x " + std::to_string(dim) + ")");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw Error(ErrorCode::kFormat,
                "trailing bytes after EMB1 payload at byte offset " +
                    std::to_string(kHeaderBytes + payload.size()) +
                    " (count x dim mismatch)");
  }
  std::vector<float> data(values);
  for (std::uint64_t i = 0; i < values; ++i) {
    data[i] = std::bit_cast<float>(ReadU32(payload.data() + 4 * i));
    if (!std::isfinite(data[i])) {
      throw Error(ErrorCode::kDegenerateVector,
                  "non-finite value in embedding row " + std::to_string(i / dim));
    }
  }
  EmbeddingMatrix matrix(rows, dim, std::move(data));
  if (normalization == Normalization::kUnit) return Normalize(matrix);
  return matrix;
}

EmbeddingMatrix LoadEmbeddings(const std::filesystem::path &path,
                               Normalization normalization) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open embedding file " + path.string());
  return ReadEmb1(in, normalization);
}

void WriteEmb1(std::ostream &out, const EmbeddingMatrix &matrix) {
  if (matrix.rows() > UINT32_MAX || matrix.dim() > UINT32_MAX) {
    throw Error(ErrorCode::kFormat, "embedding matrix too large for EMB1");
  }
  std::string bytes(kEmb1Magic, sizeof(kEmb1Magic));
  bytes.reserve(kHeaderBytes + matrix.data().size() * 4);
  AppendU32(bytes, static_cast<std::uint32_t>(matrix.rows()));
  AppendU32(bytes, static_cast<std::uint32_t>(matrix.dim()));
  for (float v : matrix.data()) AppendU32(bytes, std::bit_cast<std::uint32_t>(v));
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "failed writing EMB1 data");
}

std::filesystem::path IndexPath(const std::filesystem::path &emb_path) {
  return std::filesystem::path(emb_path.string() + ".idx.jsonl");
}

std::vector<IndexEntry> CorpusIndex(const Corpus &corpus) {
  std::vector<IndexEntry> index;
  index.reserve(corpus.group_count());
  for (std::size_t d = 0; d < corpus.document_count(); ++d) {
    const auto &doc = corpus.document(d);
    for (std::size_t g = 0; g < doc.groups.size(); ++g) {
      index.push_back({corpus.Row(d, g), doc.id, g});
    }
  }
  return index;
}

void WriteIndex(const std::filesystem::path &path,
                const std::vector<IndexEntry> &index) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write index file " + path.string());
  for (const auto &e : index) {
    nlohmann::ordered_json j;
    j["row"] = e.row;
    j["doc"] = e.doc;
    j["group"] = e.group;
    out << j.dump() << '\n';
  }
}

std::vector<IndexEntry> LoadIndex(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open index file " + path.string());
  std::vector<IndexEntry> index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("row") ||
        !j.contains("doc") || !j.contains("group") ||
        !j["row"].is_number_unsigned() || !j["doc"].is_string() ||
        !j["group"].is_number_unsigned()) {
      throw Error(ErrorCode::kMalformedRecord,
                  path.string() + " line " + std::to_string(line_no) +
                      ": expected {\"row\", \"doc\", \"group\"}");
    }
    index.push_back({j["row"].get<std::size_t>(), j["doc"].get<std::string>(),
                     j["group"].get<std::size_t>()});
  }
  return index;
}

void SaveEmbeddings(const std::filesystem::path &path,
                    const EmbeddingMatrix &matrix, const Corpus *corpus) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot write embedding file " + path.string());
    WriteEmb1(out, matrix);
  }
  if (corpus != nullptr) {
    CheckAlignment(matrix, *corpus);
    WriteIndex(IndexPath(path), CorpusIndex(*corpus));
  }
}

void CheckAlignment(const EmbeddingMatrix &matrix, const Corpus &corpus,
                    const std::vector<IndexEntry> *index) {
  if (matrix.rows() != corpus.group_count()) {
    throw Error(ErrorCode::kAlignment,
                "embedding has " + std::to_string(matrix.rows()) +
                    " rows but corpus has " + std::to_string(corpus.group_count()) +
                    " sentence groups");
  }
  if (index == nullptr) return;
  if (index->size() != corpus.group_count()) {
    throw Error(ErrorCode::kAlignment,
                "embedding index has " + std::to_string(index->size()) +
                    " entries but corpus has " +
                    std::to_string(corpus.group_count()) + " sentence groups");
  }
  const auto expected = CorpusIndex(corpus);
  for (std::size_t r = 0; r < expected.size(); ++r) {
    const auto &a = expected[r];
    const auto &b = (*index)[r];
    if (a.row != b.row || a.doc != b.doc || a.group != b.group) {
      throw Error(ErrorCode::kAlignment,
                  "embedding index entry " + std::to_string(r) + " is (" + b.doc +
                      ", " + std::to_string(b.group) + "), corpus expects (" +
                      a.doc + ", " + std::to_string(a.group) + ")");
    }
  }
}

}  // namespace bos
