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

#ifndef BOS_EMBEDDING_HPP_
#define BOS_EMBEDDING_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bos/corpus.hpp"
#include "bos/error.hpp"

namespace bos {

// Row-major G x dim matrix of 32-bit floats, one row per sentence group.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  // data.size() must equal rows * dim.
  EmbeddingMatrix(std::size_t rows, std::size_t dim, std::vector<float> data,
                  bool normalized = false);

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }
  bool normalized() const { return normalized_; }
  std::span<const float> row(std::size_t r) const {
    return {data_.data() + r * dim_, dim_};
  }
  const std::vector<float> &data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<float> data_;
  bool normalized_ = false;
};

// Divides every row by its Euclidean norm (computed in double). Throws
// kDegenerateVector naming the first zero row.
EmbeddingMatrix Normalize(const EmbeddingMatrix &matrix);

template <typename A, typename B>
double Dot(std::span<const A> a, std::span<const B> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return sum;
}

template <typename A>
double Norm(std::span<const A> a) {
  return std::sqrt(Dot(a, a));
}

// Cosine similarity. Throws kDimensionMismatch or kDegenerateVector.
template <typename A, typename B>
double Cosine(std::span<const A> a, std::span<const B> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cosine of vectors with dims " + std::to_string(a.size()) +
                    " and " + std::to_string(b.size()));
  }
  const double na = Norm(a);
  const double nb = Norm(b);
  if (na == 0.0 || nb == 0.0) {
    throw Error(ErrorCode::kDegenerateVector, "cosine of a zero vector");
  }
  const double c = Dot(a, b) / (na * nb);
  return std::clamp(c, -1.0, 1.0);
}

inline double Cosine(const std::vector<double> &a, const std::vector<double> &b) {
  return Cosine(std::span<const double>(a), std::span<const double>(b));
}

// EMB1 container: "BOSEMB1\0", u32 rows, u32 dim, rows*dim f32, all
// little-endian.
inline constexpr char kEmb1Magic[8] = {'B', 'O', 'S', 'E', 'M', 'B', '1', '\0'};

enum class Normalization { kNone, kUnit };

// Reads an EMB1 stream. With kUnit (the default for loading) every row is
// normalized, so zero rows are rejected with kDegenerateVector.
EmbeddingMatrix ReadEmb1(std::istream &in,
                         Normalization normalization = Normalization::kUnit);
EmbeddingMatrix LoadEmbeddings(const std::filesystem::path &path,
                               Normalization normalization = Normalization::kUnit);

void WriteEmb1(std::ostream &out, const EmbeddingMatrix &matrix);

// One entry of the "<path>.idx.jsonl" companion file.
struct IndexEntry {
  std::size_t row = 0;
  std::string doc;
  std::size_t group = 0;
};

std::filesystem::path IndexPath(const std::filesystem::path &emb_path);
std::vector<IndexEntry> CorpusIndex(const Corpus &corpus);
void WriteIndex(const std::filesystem::path &path,
                const std::vector<IndexEntry> &index);
std::vector<IndexEntry> LoadIndex(const std::filesystem::path &path);

// Writes the EMB1 file and, when a corpus is given, its index companion.
void SaveEmbeddings(const std::filesystem::path &path,
                    const EmbeddingMatrix &matrix,
                    const Corpus *corpus = nullptr);

// Checks the matrix can be bound to the corpus: same row count and, if an
// index is supplied, identical (row, doc, group) enumeration. Throws
// kAlignment.
void CheckAlignment(const EmbeddingMatrix &matrix, const Corpus &corpus,
                    const std::vector<IndexEntry> *index = nullptr);

// Runs an external embedding provider. The command is executed through
// /bin/sh with the group records (one JSON object per line: row, doc, group,
// text) on standard input, the output path appended as its last argument
// and also exported as BOS_EMB_OUT. The provider must write an EMB1 file
// there. Throws kProvider on launch failure or non-zero exit (with the
// provider's stderr) and kAlignment when the row count does not match.
EmbeddingMatrix RequestEmbeddings(const Corpus &corpus,
                                  const std::string &provider_command,
                                  const std::filesystem::path &out);

}  // namespace bos

#endif  // BOS_EMBEDDING_HPP_
