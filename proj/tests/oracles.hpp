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

// Independent brute-force re-implementations used as test oracles. They
// deliberately take different computational routes from the library.

#ifndef BOS_TESTS_ORACLES_HPP_
#define BOS_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bos/corpus.hpp"
#include "bos/embedding.hpp"
#include "bos/matrix.hpp"
#include "bos/triplets.hpp"

namespace bos::oracle {

// Sum over documents of n_neg * max(2|d| - 2, 0).
inline std::size_t TripletCount(const std::vector<std::size_t> &sizes, int n_neg) {
  std::size_t total = 0;
  for (std::size_t s : sizes) {
    if (s >= 2) total += static_cast<std::size_t>(n_neg) * (2 * s - 2);
  }
  return total;
}

// Largest m with m <= f * n, by counting up.
inline std::size_t FloorCount(double f, std::size_t n) {
  std::size_t m = 0;
  while (static_cast<double>(m + 1) <= f * static_cast<double>(n) + 1e-9) ++m;
  return m;
}

inline double EuclideanDistance(std::span<const float> a, std::span<const float> b) {
  long double sum = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long double d = static_cast<long double>(a[i]) - static_cast<long double>(b[i]);
    sum += d * d;
  }
  return static_cast<double>(std::sqrt(sum));
}

// Removes the `count` members of `pool` with the largest key, where an equal
// key ranks the later triplet higher. Rank of i = number of members beating
// it, computed pairwise.
inline void RemoveTop(const std::vector<std::size_t> &pool, const std::vector<double> &key,
                      std::size_t count, std::vector<bool> &removed) {
  for (std::size_t i : pool) {
    std::size_t beaten_by = 0;
    for (std::size_t j : pool) {
      if (key[j] > key[i] || (key[j] == key[i] && j > i)) ++beaten_by;
    }
    if (beaten_by < count) removed[i] = true;
  }
}

inline TripletSet Filter(const TripletSet &triplets, const Corpus &corpus,
                         const EmbeddingMatrix &emb, double f_pos, double f_tri) {
  const std::size_t n = triplets.size();
  auto vec = [&](const GroupRef &g) { return emb.row(corpus.Row(g.doc, g.index)); };
  std::vector<double> ap(n), gap(n);
  for (std::size_t i = 0; i < n; ++i) {
    ap[i] = EuclideanDistance(vec(triplets[i].anchor), vec(triplets[i].positive));
    gap[i] = ap[i] - EuclideanDistance(vec(triplets[i].anchor), vec(triplets[i].negative));
  }
  std::vector<bool> removed(n, false);
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < n; ++i) pool.push_back(i);
  RemoveTop(pool, ap, FloorCount(f_pos, n), removed);
  pool.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (!removed[i]) pool.push_back(i);
  }
  RemoveTop(pool, gap, FloorCount(f_tri, n), removed);
  TripletSet out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!removed[i]) out.push_back(triplets[i]);
  }
  return out;
}

// Exhaustive E-step for one group: orders all topics by score (descending,
// then index) and returns the entry at `rank` (1-based), capped at k.
inline int AssignGroup(std::span<const float> v, const Matrix &topics,
                       std::span<const double> prior, int rank) {
  std::vector<std::pair<double, int>> scored;
  for (std::size_t t = 0; t < topics.rows(); ++t) {
    const auto c = topics.row(t);
    double dot = 0.0, nv = 0.0, nc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      dot += static_cast<double>(v[i]) * c[i];
      nv += static_cast<double>(v[i]) * static_cast<double>(v[i]);
      nc += c[i] * c[i];
    }
    const double cosine = (nv == 0.0 || nc == 0.0) ? 0.0 : dot / std::sqrt(nv * nc);
    scored.emplace_back(cosine * prior[t], static_cast<int>(t));
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto &a, const auto &b) { return a.first > b.first; });
  const std::size_t pick = std::min<std::size_t>(static_cast<std::size_t>(rank), scored.size());
  return scored[pick - 1].second;
}

// Rank from the draw r: best topic when r < 0.5 + epoch / (2 epochs).
inline int Rank(double r, int epoch, int epochs) {
  return r < 0.5 + static_cast<double>(epoch) / (2.0 * static_cast<double>(epochs)) ? 1 : 2;
}

// Raw (document -> groups -> words) with per-group topics.
struct LabelledWords {
  std::vector<std::vector<std::vector<std::string>>> docs;
  std::vector<std::vector<int>> topics;
  std::size_t k = 0;
};

// n_min and score straight from raw data; variance via E[x^2] - E[x]^2.
inline double MinimumCount(const LabelledWords &data, const std::string &w) {
  std::vector<double> per_topic(data.k, 0.0);
  double max_doc = 0.0;
  for (std::size_t d = 0; d < data.docs.size(); ++d) {
    double in_doc = 0.0;
    for (std::size_t g = 0; g < data.docs[d].size(); ++g) {
      for (const auto &x : data.docs[d][g]) {
        if (x != w) continue;
        in_doc += 1.0;
        per_topic[static_cast<std::size_t>(data.topics[d][g])] += 1.0;
      }
    }
    max_doc = std::max(max_doc, in_doc);
  }
  double sum = 0.0, sum_sq = 0.0;
  for (double n : per_topic) {
    sum += n;
    sum_sq += n * n;
  }
  const double k = static_cast<double>(data.k);
  const double mean = sum / k;
  return mean + std::sqrt(std::max(sum_sq / k - mean * mean, 0.0)) + max_doc;
}

inline double Score(const LabelledWords &data, const std::string &w, std::size_t topic) {
  double n_wt = 0.0, n_w = 0.0;
  for (std::size_t d = 0; d < data.docs.size(); ++d) {
    for (std::size_t g = 0; g < data.docs[d].size(); ++g) {
      for (const auto &x : data.docs[d][g]) {
        if (x != w) continue;
        n_w += 1.0;
        if (static_cast<std::size_t>(data.topics[d][g]) == topic) n_wt += 1.0;
      }
    }
  }
  if (n_w == 0.0) return 0.0;
  const double excess = n_wt - MinimumCount(data, w);
  if (excess <= 0.0) return 0.0;
  return std::sqrt(excess) * (n_wt / n_w - 1.0 / static_cast<double>(data.k));
}

// NMI = 2 (H(X) + H(Y) - H(X,Y)) / (H(X) + H(Y)).
inline double Nmi(const std::vector<int> &a, const std::vector<int> &b) {
  const double n = static_cast<double>(a.size());
  auto entropy = [n](const std::vector<double> &counts) {
    double h = 0.0;
    for (double c : counts) {
      if (c > 0.0) h += (c / n) * std::log(n / c);
    }
    return h;
  };
  std::set<int> la(a.begin(), a.end()), lb(b.begin(), b.end());
  std::vector<double> ca, cb, cab;
  for (int x : la) ca.push_back(static_cast<double>(std::count(a.begin(), a.end(), x)));
  for (int y : lb) cb.push_back(static_cast<double>(std::count(b.begin(), b.end(), y)));
  for (int x : la) {
    for (int y : lb) {
      double c = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == x && b[i] == y) c += 1.0;
      }
      cab.push_back(c);
    }
  }
  const double ha = entropy(ca), hb = entropy(cb);
  if (ha + hb == 0.0) return 1.0;
  return 2.0 * (ha + hb - entropy(cab)) / (ha + hb);
}

// Document-level NPMI of a topic from raw reference documents (word sets).
inline std::optional<double> TopicNpmi(const std::vector<std::set<std::string>> &reference,
                                       const std::vector<std::string> &words) {
  const double n = static_cast<double>(reference.size());
  auto df = [&](const std::string &w) {
    double c = 0.0;
    for (const auto &doc : reference) c += doc.count(w) ? 1.0 : 0.0;
    return c;
  };
  std::vector<std::string> present;
  for (const auto &w : words) {
    if (df(w) > 0.0) present.push_back(w);
  }
  if (present.size() < 2) return std::nullopt;
  double sum = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < present.size(); ++i) {
    for (std::size_t j = i + 1; j < present.size(); ++j) {
      double joint = 0.0;
      for (const auto &doc : reference) {
        if (doc.count(present[i]) && doc.count(present[j])) joint += 1.0;
      }
      const double pij = (joint > 0.0 ? joint : 1.0) / n;
      const double pi = df(present[i]) / n, pj = df(present[j]) / n;
      sum += pij == 1.0 ? 1.0 : std::log(pij / (pi * pj)) / -std::log(pij);
      pairs += 1.0;
    }
  }
  return sum / pairs;
}

}  // namespace bos::oracle

#endif  // BOS_TESTS_ORACLES_HPP_
