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

#ifndef BOS_SENCLU_HPP_
#define BOS_SENCLU_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bos/corpus.hpp"
#include "bos/embedding.hpp"
#include "bos/matrix.hpp"

namespace bos {

// SenClu settings.
struct SenCluParams {
  int k = 50;
  double alpha = 2.0;
  int epochs = 10;
  int group_size = 3;
  std::uint64_t seed = 0;
  // Worker cap for the E-step. Results do not depend on it.
  unsigned threads = 1;

  // c(alpha) at the start of the first epoch.
  double InitialSmoothing() const { return alpha > 8.0 ? alpha : 8.0; }

  // Throws kInvalidParameter.
  void Validate() const;
};

struct EpochRecord {
  int epoch = 0;
  // Smoothing constant c used by this epoch's M-step.
  double smoothing = 0.0;
  // Groups whose topic differs from the previous epoch (all groups in the
  // first epoch).
  std::size_t changed = 0;
};

struct TopicModel {
  SenCluParams params;
  // k x dim topic centroids.
  Matrix topic_vectors;
  // documents x k, p(t|d).
  Matrix topic_doc;
  // Topic of every sentence group, in row order.
  std::vector<int> assignments;
  std::vector<EpochRecord> epoch_log;
  // Document ids in row order of topic_doc.
  std::vector<std::string> doc_ids;

  std::size_t topics() const { return topic_vectors.rows(); }
  std::size_t dim() const { return topic_vectors.cols(); }
};

// k-means++ seeding under cosine distance: the first center is a uniform
// row, each further center is drawn with probability proportional to
// (1 - max cosine to the chosen centers)^2. Already chosen rows are never
// drawn again; if all remaining weights are zero the next center is a
// uniform pick among unchosen rows. Throws kInsufficientData when
// rows < k.
Matrix InitTopics(const EmbeddingMatrix &embeddings, int k, std::uint64_t seed);

// The r in [0, 1) drawn for document `doc` in `epoch`. Each (seed, doc,
// epoch) has its own stream, so the E-step is order independent.
double PerturbationDraw(std::uint64_t seed, std::size_t doc, int epoch);

// 1 for the best topic, 2 for the runner-up. Rank 2 is used when
// r >= 0.5 + epoch / (2 * epochs), and never when k == 1.
int PerturbationRank(double r, int epoch, int epochs, std::size_t k);

// Hard E-step. Every group of document d goes to the topic with the rank-th
// largest cos(v_g, v_t) * p(t|d), ties resolved towards the lower topic
// index; the rank is drawn once per document.
std::vector<int> EStep(const EmbeddingMatrix &embeddings, const DocumentLayout &layout,
                       const Matrix &topic_vectors, const Matrix &topic_doc,
                       int epoch, int epochs, std::uint64_t seed,
                       unsigned threads = 1);

struct MStepResult {
  Matrix topic_vectors;
  Matrix topic_doc;
  // Topics that received no groups and were re-seeded.
  std::vector<int> reseeded;
};

// Centroid and prior update. v_t is the mean of the group vectors assigned
// to t; p(t|d) = (|A_{t,d}| + c) / (|d| + k c). A topic left without groups
// is moved to the row whose best cosine to the current centroids is
// smallest (lowest row on ties).
MStepResult MStep(const EmbeddingMatrix &embeddings, const DocumentLayout &layout,
                  const std::vector<int> &assignments, double c, std::size_t k);

// Next smoothing constant: max(c / 2, alpha).
double Anneal(double c, double alpha);

// Called after every epoch with the epoch record and the updated p(t|d).
using FitObserver = std::function<void(const EpochRecord &, const Matrix &)>;

TopicModel Fit(const EmbeddingMatrix &embeddings, const DocumentLayout &layout,
               const SenCluParams &params, const FitObserver &observer = {});
// Checks the embeddings align with the corpus and records document ids.
TopicModel Fit(const Corpus &corpus, const EmbeddingMatrix &embeddings,
               const SenCluParams &params, const FitObserver &observer = {});

// Topic mixtures for unseen documents: topic vectors stay fixed, p(t|d)
// starts uniform and gets 5 rank-1 E/M rounds with c fixed at alpha.
inline constexpr int kTransformIterations = 5;
Matrix Transform(const TopicModel &model, const EmbeddingMatrix &embeddings,
                 const DocumentLayout &layout, unsigned threads = 1);

}  // namespace bos

#endif  // BOS_SENCLU_HPP_
