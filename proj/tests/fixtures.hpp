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

// Shared test fixtures: synthetic corpora and planted-cluster embeddings.

#ifndef BOS_TESTS_FIXTURES_HPP_
#define BOS_TESTS_FIXTURES_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bos/corpus.hpp"
#include "bos/embedding.hpp"
#include "bos/random.hpp"
#include "scratch.hpp"

namespace bos::testing {

// Corpus whose document d has sizes[d] single-sentence groups. Group text is
// "d<d> g<i>." so words are distinguishable.
inline Corpus ShapeCorpus(const std::vector<std::size_t> &sizes) {
  std::vector<Document> docs;
  for (std::size_t d = 0; d < sizes.size(); ++d) {
    Document doc;
    doc.id = "doc" + std::to_string(d);
    for (std::size_t g = 0; g < sizes[d]; ++g) {
      SentenceGroup group;
      group.doc_id = doc.id;
      group.index = g;
      group.sentences = {"d" + std::to_string(d) + " g" + std::to_string(g) + "."};
      group.words = TokenizeWords(group.sentences[0]);
      doc.groups.push_back(std::move(group));
    }
    docs.push_back(std::move(doc));
  }
  return Corpus(std::move(docs), 1);
}

// Corpus from explicit per-group word lists; labels optional.
inline Corpus WordCorpus(const std::vector<std::vector<std::vector<std::string>>> &docs,
                         const std::vector<std::string> &labels = {}) {
  std::vector<Document> out;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    Document doc;
    doc.id = "doc" + std::to_string(d);
    if (d < labels.size()) doc.label = labels[d];
    for (std::size_t g = 0; g < docs[d].size(); ++g) {
      SentenceGroup group;
      group.doc_id = doc.id;
      group.index = g;
      std::string sentence;
      for (const auto &w : docs[d][g]) sentence += (sentence.empty() ? "" : " ") + w;
      group.sentences = {sentence + "."};
      group.words = docs[d][g];
      doc.groups.push_back(std::move(group));
    }
    out.push_back(std::move(doc));
  }
  return Corpus(std::move(out), 1);
}

// Random unit vector.
inline std::vector<double> RandomUnit(Rng &rng, std::size_t dim) {
  std::vector<double> v(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto &x : v) {
      // Box-Muller from the portable uniform source.
      const double u1 = rng.Uniform() + 1e-300;
      const double u2 = rng.Uniform();
      x = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
      norm += x * x;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  for (auto &x : v) x /= norm;
  return v;
}

// Rotates unit vector c by `angle` radians towards a random direction
// orthogonal to it.
inline std::vector<double> Perturb(Rng &rng, const std::vector<double> &c, double angle) {
  std::vector<double> u = RandomUnit(rng, c.size());
  double dot = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) dot += u[i] * c[i];
  double norm = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    u[i] -= dot * c[i];
    norm += u[i] * u[i];
  }
  norm = std::sqrt(norm);
  std::vector<double> v(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    v[i] = std::cos(angle) * c[i] + std::sin(angle) * u[i] / norm;
  }
  return v;
}

struct PlantedData {
  Corpus corpus;
  EmbeddingMatrix embeddings;
  // Dominant cluster per document and cluster per group.
  std::vector<int> doc_cluster;
  std::vector<int> group_cluster;
};

// Documents of `groups_per_doc` groups; each document has a dominant
// cluster and every group comes from it with probability `purity`,
// otherwise from a uniformly chosen other cluster. Cluster centers are the
// first `clusters` coordinate axes (pairwise 90 degrees); every group vector
// is its center rotated by a uniform angle in [0, max_noise_deg].
inline PlantedData PlantedClusters(std::uint64_t seed, std::size_t docs,
                                   std::size_t groups_per_doc, std::size_t clusters,
                                   std::size_t dim, double purity, double max_noise_deg) {
  Rng rng(seed);
  std::vector<std::vector<double>> centers(clusters, std::vector<double>(dim, 0.0));
  for (std::size_t c = 0; c < clusters; ++c) centers[c][c] = 1.0;

  PlantedData data;
  std::vector<std::size_t> sizes(docs, groups_per_doc);
  data.corpus = ShapeCorpus(sizes);
  std::vector<float> values;
  values.reserve(docs * groups_per_doc * dim);
  for (std::size_t d = 0; d < docs; ++d) {
    const int main = static_cast<int>(rng.Index(clusters));
    data.doc_cluster.push_back(main);
    for (std::size_t g = 0; g < groups_per_doc; ++g) {
      int cluster = main;
      if (rng.Uniform() >= purity) {
        cluster = static_cast<int>(rng.Index(clusters - 1));
        if (cluster >= main) ++cluster;
      }
      data.group_cluster.push_back(cluster);
      const double angle = rng.Uniform() * max_noise_deg * M_PI / 180.0;
      for (double x : Perturb(rng, centers[static_cast<std::size_t>(cluster)], angle)) {
        values.push_back(static_cast<float>(x));
      }
    }
  }
  data.embeddings = Normalize(EmbeddingMatrix(docs * groups_per_doc, dim, std::move(values)));
  return data;
}

// Random unit embeddings for a corpus.
inline EmbeddingMatrix RandomEmbeddings(std::uint64_t seed, std::size_t rows, std::size_t dim) {
  Rng rng(seed);
  std::vector<float> values;
  for (std::size_t r = 0; r < rows; ++r) {
    for (double x : RandomUnit(rng, dim)) values.push_back(static_cast<float>(x));
  }
  return Normalize(EmbeddingMatrix(rows, dim, std::move(values)));
}

}  // namespace bos::testing

#endif  // BOS_TESTS_FIXTURES_HPP_
