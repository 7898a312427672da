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

#ifndef BOS_TRIPLETS_HPP_
#define BOS_TRIPLETS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "bos/corpus.hpp"
#include "bos/embedding.hpp"

namespace bos {

// Position of a sentence group: document index in the corpus and group
// index within that document.
struct GroupRef {
  std::size_t doc = 0;
  std::size_t index = 0;

  friend bool operator==(const GroupRef &, const GroupRef &) = default;
};

struct Triplet {
  GroupRef anchor;
  GroupRef positive;
  GroupRef negative;

  friend bool operator==(const Triplet &, const Triplet &) = default;
};

using TripletSet = std::vector<Triplet>;

// Fine-tuning dataset settings.
struct FtParams {
  double f_pos = 0.08;
  double f_tri = 0.24;
  double margin = 0.16;
  int n_neg = 2;
  int epochs = 4;
  std::uint64_t seed = 0;

  // Throws kInvalidParameter.
  void Validate() const;
};

// For every document and group position i, n_neg times: a forward triplet
// (g_i, g_{i+1}, N) when g_{i+1} exists and a backward triplet (g_i, g_{i-1},
// N') when g_{i-1} exists. Each negative is drawn fresh: first a uniformly
// random other document, then a uniformly random group inside it. Both
// negatives are drawn on every repetition, emitted or not, so the random
// stream only depends on the corpus shape.
TripletSet BuildTriplets(const Corpus &corpus, int n_neg, std::uint64_t seed);

// Number of triplets removed by each criterion for a set of n triplets:
// floor(f * n) for each fraction, both taken of the original size.
struct RemovalCounts {
  std::size_t by_positive = 0;
  std::size_t by_triplet = 0;
};
RemovalCounts ComputeRemovalCounts(std::size_t n, double f_pos, double f_tri);

// Drops the floor(f_pos * N0) triplets with the largest anchor-positive
// distance, then the floor(f_tri * N0) remaining triplets with the largest
// d(A,P) - d(A,N). Ties remove the later triplet first. Survivors keep their
// original order. Throws kOverFiltering when nothing would survive and
// kInvalidParameter for bad fractions.
TripletSet FilterTriplets(const TripletSet &triplets, const Corpus &corpus,
                          const EmbeddingMatrix &embeddings, double f_pos,
                          double f_tri, unsigned threads = 1);

// One JSON object per line with anchor/positive/negative {doc, group, text}.
// Returns the number of lines written. Throws kIntegrity for a reference
// that does not resolve in the corpus.
std::size_t ExportTriplets(const TripletSet &triplets, const Corpus &corpus,
                           const std::filesystem::path &path);

}  // namespace bos

#endif  // BOS_TRIPLETS_HPP_
