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

#include "bos/triplets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "bos/error.hpp"
#include "bos/parallel.hpp"
#include "bos/random.hpp"
#include "json.hpp"

namespace bos {

namespace {

// Guards floor() against products like 0.29 * 100 = 28.999999999999996.
constexpr double kFloorSlack = 1e-9;

void CheckFraction(double f, const char *name) {
  if (!(f >= 0.0 && f < 1.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                std::string(name) + " must lie in [0, 1), got " + std::to_string(f));
  }
}

double Distance(std::span<const float> a, std::span<const float> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

// Indices of the `count` largest keys among `candidates`; ties pick the
// later index so earlier triplets are kept.
std::vector<std::size_t> LargestByKey(std::vector<std::size_t> candidates,
                                      const std::vector<double> &key,
                                      std::size_t count) {
  std::sort(candidates.begin(), candidates.end(),
            [&](std::size_t a, std::size_t b) {
              if (key[a] != key[b]) return key[a] > key[b];
              return a > b;
            });
  candidates.resize(count);
  return candidates;
}

}  // namespace

void FtParams::Validate() const {
  CheckFraction(f_pos, "f_pos");
  CheckFraction(f_tri, "f_tri");
  if (!(f_pos + f_tri < 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "f_pos + f_tri must be < 1");
  }
  if (!(margin > 0.0)) throw Error(ErrorCode::kInvalidParameter, "margin must be > 0");
  if (n_neg < 1) throw Error(ErrorCode::kInvalidParameter, "n_neg must be >= 1");
  if (epochs < 1) throw Error(ErrorCode::kInvalidParameter, "epochs must be >= 1");
}

TripletSet BuildTriplets(const Corpus &corpus, int n_neg, std::uint64_t seed) {
  if (n_neg < 1) {
    throw Error(ErrorCode::kInvalidParameter,
                "n_neg must be >= 1, got " + std::to_string(n_neg));
  }
  const std::size_t docs = corpus.document_count();
  // Negatives come from documents that have at least one group.
  std::vector<std::size_t> sources;
  for (std::size_t d = 0; d < docs; ++d) {
    if (!corpus.document(d).groups.empty()) sources.push_back(d);
  }
  if (sources.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "triplet generation needs at least 2 non-empty documents, corpus has " +
                    std::to_string(sources.size()));
  }
  Rng rng(seed);
  auto draw_negative = [&](std::size_t doc) {
    const std::size_t self =
        std::lower_bound(sources.begin(), sources.end(), doc) - sources.begin();
    std::size_t pick = rng.Index(sources.size() - 1);
    if (pick >= self) ++pick;
    const std::size_t other = sources[pick];
    return GroupRef{other, rng.Index(corpus.document(other).groups.size())};
  };

  TripletSet triplets;
  std::size_t expected = 0;
  for (const auto &d : corpus.documents()) {
    if (d.groups.size() >= 2) expected += 2 * d.groups.size() - 2;
  }
  triplets.reserve(expected * static_cast<std::size_t>(n_neg));

  for (std::size_t d = 0; d < docs; ++d) {
    const std::size_t len = corpus.document(d).groups.size();
    for (std::size_t i = 0; i < len; ++i) {
      for (int j = 0; j < n_neg; ++j) {
        const GroupRef forward_negative = draw_negative(d);
        if (i + 1 < len) triplets.push_back({{d, i}, {d, i + 1}, forward_negative});
        const GroupRef backward_negative = draw_negative(d);
        if (i > 0) triplets.push_back({{d, i}, {d, i - 1}, backward_negative});
      }
    }
  }
  return triplets;
}

RemovalCounts ComputeRemovalCounts(std::size_t n, double f_pos, double f_tri) {
  const double total = static_cast<double>(n);
  return {static_cast<std::size_t>(std::floor(f_pos * total + kFloorSlack)),
          static_cast<std::size_t>(std::floor(f_tri * total + kFloorSlack))};
}

TripletSet FilterTriplets(const TripletSet &triplets, const Corpus &corpus,
                          const EmbeddingMatrix &embeddings, double f_pos,
                          double f_tri, unsigned threads) {
  CheckFraction(f_pos, "f_pos");
  CheckFraction(f_tri, "f_tri");
  if (!(f_pos + f_tri < 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "f_pos + f_tri must be < 1");
  }
  CheckAlignment(embeddings, corpus);
  const std::size_t n = triplets.size();
  if (n == 0) return {};
  const RemovalCounts removal = ComputeRemovalCounts(n, f_pos, f_tri);
  if (removal.by_positive + removal.by_triplet >= n) {
    throw Error(ErrorCode::kOverFiltering,
                "filtering would remove " +
                    std::to_string(removal.by_positive + removal.by_triplet) +
                    " of " + std::to_string(n) + " triplets");
  }

  auto row_of = [&](const GroupRef &g) {
    if (g.doc >= corpus.document_count() ||
        g.index >= corpus.document(g.doc).groups.size()) {
      throw Error(ErrorCode::kIntegrity, "triplet references a missing sentence group");
    }
    return corpus.Row(g.doc, g.index);
  };
  std::vector<double> positive_distance(n);
  std::vector<double> gap(n);
  ParallelFor(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto anchor = embeddings.row(row_of(triplets[i].anchor));
      const double ap = Distance(anchor, embeddings.row(row_of(triplets[i].positive)));
      const double an = Distance(anchor, embeddings.row(row_of(triplets[i].negative)));
      positive_distance[i] = ap;
      gap[i] = ap - an;
    }
  });

  std::vector<bool> removed(n, false);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  for (std::size_t i : LargestByKey(all, positive_distance, removal.by_positive)) {
    removed[i] = true;
  }
  std::vector<std::size_t> remaining;
  remaining.reserve(n - removal.by_positive);
  for (std::size_t i = 0; i < n; ++i) {
    if (!removed[i]) remaining.push_back(i);
  }
  for (std::size_t i : LargestByKey(remaining, gap, removal.by_triplet)) removed[i] = true;

  TripletSet survivors;
  survivors.reserve(n - removal.by_positive - removal.by_triplet);
  for (std::size_t i = 0; i < n; ++i) {
    if (!removed[i]) survivors.push_back(triplets[i]);
  }
  return survivors;
}

std::size_t ExportTriplets(const TripletSet &triplets, const Corpus &corpus,
                           const std::filesystem::path &path) {
  auto resolve = [&](const GroupRef &g, std::size_t line) {
    if (g.doc >= corpus.document_count() ||
        g.index >= corpus.document(g.doc).groups.size()) {
      throw Error(ErrorCode::kIntegrity,
                  "triplet " + std::to_string(line) + " references document " +
                      std::to_string(g.doc) + " group " + std::to_string(g.index) +
                      ", which is not in the corpus");
    }
    const auto &doc = corpus.document(g.doc);
    nlohmann::ordered_json j;
    j["doc"] = doc.id;
    j["group"] = g.index;
    j["text"] = doc.groups[g.index].Text();
    return j;
  };
  // Resolve everything before touching the output file.
  std::vector<std::string> lines;
  lines.reserve(triplets.size());
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    nlohmann::ordered_json j;
    j["anchor"] = resolve(triplets[i].anchor, i);
    j["positive"] = resolve(triplets[i].positive, i);
    j["negative"] = resolve(triplets[i].negative, i);
    lines.push_back(j.dump());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write triplet file " + path.string());
  for (const auto &l : lines) out << l << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed writing triplet file " + path.string());
  return lines.size();
}

}  // namespace bos
