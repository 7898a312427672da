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

#include "bos/senclu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bos/error.hpp"
#include "bos/parallel.hpp"
#include "bos/random.hpp"

namespace bos {

namespace {

// Stream tags for DeriveSeed.
constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kPerturbationStream = 1;

std::vector<double> RowNorms(const Matrix &m) {
  std::vector<double> norms(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) norms[r] = Norm(m.row(r));
  return norms;
}

// Cosine against a centroid with a precomputed norm; a zero centroid (mean
// of opposite vectors) scores 0.
double CentroidCosine(std::span<const float> v, double v_norm,
                      std::span<const double> centroid, double centroid_norm) {
  if (v_norm == 0.0 || centroid_norm == 0.0) return 0.0;
  return Dot(v, centroid) / (v_norm * centroid_norm);
}

Matrix PriorUpdate(const DocumentLayout &layout, const std::vector<int> &assignments,
                   double c, std::size_t k) {
  Matrix topic_doc(layout.documents(), k, 0.0);
  for (std::size_t d = 0; d < layout.documents(); ++d) {
    auto row = topic_doc.row(d);
    for (std::size_t g = layout.begin(d); g < layout.end(d); ++g) {
      row[static_cast<std::size_t>(assignments[g])] += 1.0;
    }
    const double denom = static_cast<double>(layout.size(d)) + static_cast<double>(k) * c;
    for (double &p : row) p = denom > 0.0 ? (p + c) / denom : 1.0 / static_cast<double>(k);
  }
  return topic_doc;
}

void CheckAssignments(const std::vector<int> &assignments, std::size_t groups,
                      std::size_t k) {
  if (assignments.size() != groups) {
    throw Error(ErrorCode::kInvalidParameter,
                "assignments cover " + std::to_string(assignments.size()) + " of " +
                    std::to_string(groups) + " groups");
  }
  for (int t : assignments) {
    if (t < 0 || static_cast<std::size_t>(t) >= k) {
      throw Error(ErrorCode::kInvalidParameter,
                  "topic index " + std::to_string(t) + " outside [0, " +
                      std::to_string(k) + ")");
    }
  }
}

}  // namespace

void SenCluParams::Validate() const {
  if (k < 1) throw Error(ErrorCode::kInvalidParameter, "k must be >= 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidParameter, "alpha must be a finite value >= 0");
  }
  if (epochs < 1) throw Error(ErrorCode::kInvalidParameter, "epochs must be >= 1");
  if (group_size < 1) throw Error(ErrorCode::kInvalidParameter, "n_s must be >= 1");
}

Matrix InitTopics(const EmbeddingMatrix &embeddings, int k, std::uint64_t seed) {
  if (k < 1) throw Error(ErrorCode::kInvalidParameter, "k must be >= 1");
  const std::size_t n = embeddings.rows();
  const auto topics = static_cast<std::size_t>(k);
  if (n < topics) {
    throw Error(ErrorCode::kInsufficientData,
                std::to_string(k) + " topics requested but only " +
                    std::to_string(n) + " sentence groups available");
  }
  Rng rng(DeriveSeed(seed, {kInitStream}));
  std::vector<double> norms(n);
  for (std::size_t r = 0; r < n; ++r) norms[r] = Norm(embeddings.row(r));

  std::vector<bool> chosen(n, false);
  std::vector<double> best_cosine(n, -std::numeric_limits<double>::infinity());
  Matrix centers(topics, embeddings.dim());
  std::vector<double> weight(n);

  std::size_t pick = rng.Index(n);
  for (std::size_t t = 0;; ++t) {
    chosen[pick] = true;
    const auto center = embeddings.row(pick);
    std::copy(center.begin(), center.end(), centers.row(t).begin());
    if (t + 1 == topics) break;

    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (chosen[r]) {
        weight[r] = 0.0;
        continue;
      }
      const double c = (norms[r] == 0.0 || norms[pick] == 0.0)
                           ? 0.0
                           : Dot(embeddings.row(r), center) / (norms[r] * norms[pick]);
      best_cosine[r] = std::max(best_cosine[r], c);
      const double gap = std::max(0.0, 1.0 - best_cosine[r]);
      weight[r] = gap * gap;
      total += weight[r];
    }

    if (total > 0.0) {
      const double u = rng.Uniform() * total;
      double cumulative = 0.0;
      std::size_t last_positive = n;
      pick = n;
      for (std::size_t r = 0; r < n; ++r) {
        if (weight[r] <= 0.0) continue;
        last_positive = r;
        cumulative += weight[r];
        if (u < cumulative) {
          pick = r;
          break;
        }
      }
      if (pick == n) pick = last_positive;
    } else {
      // Every unchosen row duplicates a center.
      std::size_t nth = rng.Index(n - (t + 1));
      for (pick = 0; pick < n; ++pick) {
        if (!chosen[pick] && nth-- == 0) break;
      }
    }
  }
  return centers;
}

double PerturbationDraw(std::uint64_t seed, std::size_t doc, int epoch) {
  Rng rng(DeriveSeed(seed, {kPerturbationStream, static_cast<std::uint64_t>(doc),
                            static_cast<std::uint64_t>(epoch)}));
  return rng.Uniform();
}

int PerturbationRank(double r, int epoch, int epochs, std::size_t k) {
  if (k < 2) return 1;
  const double threshold = 0.5 + static_cast<double>(epoch) / (2.0 * epochs);
  return r < threshold ? 1 : 2;
}

std::vector<int> EStep(const EmbeddingMatrix &embeddings, const DocumentLayout &layout,
                       const Matrix &topic_vectors, const Matrix &topic_doc,
                       int epoch, int epochs, std::uint64_t seed, unsigned threads) {
  const std::size_t k = topic_vectors.rows();
  if (topic_vectors.cols() != embeddings.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "topic vectors have dim " + std::to_string(topic_vectors.cols()) +
                    ", embeddings have dim " + std::to_string(embeddings.dim()));
  }
  if (layout.groups() != embeddings.rows() || topic_doc.rows() != layout.documents() ||
      topic_doc.cols() != k) {
    throw Error(ErrorCode::kAlignment, "E-step inputs disagree on corpus shape");
  }
  const std::vector<double> topic_norms = RowNorms(topic_vectors);
  std::vector<int> assignments(layout.groups(), 0);

  ParallelFor(layout.documents(), threads, [&](std::size_t first, std::size_t last) {
    std::vector<double> score(k);
    for (std::size_t d = first; d < last; ++d) {
      const int rank = PerturbationRank(PerturbationDraw(seed, d, epoch), epoch, epochs, k);
      const auto prior = topic_doc.row(d);
      for (std::size_t g = layout.begin(d); g < layout.end(d); ++g) {
        const auto v = embeddings.row(g);
        const double v_norm = Norm(v);
        std::size_t best = 0;
        std::size_t second = k;
        for (std::size_t t = 0; t < k; ++t) {
          score[t] = CentroidCosine(v, v_norm, topic_vectors.row(t), topic_norms[t]) * prior[t];
          if (t == 0) continue;
          if (score[t] > score[best]) {
            second = best;
            best = t;
          } else if (second == k || score[t] > score[second]) {
            second = t;
          }
        }
        assignments[g] = static_cast<int>(rank == 1 ? best : second);
      }
    }
  });
  return assignments;
}

MStepResult MStep(const EmbeddingMatrix &embeddings, const DocumentLayout &layout,
                  const std::vector<int> &assignments, double c, std::size_t k) {
  if (layout.groups() != embeddings.rows()) {
    throw Error(ErrorCode::kAlignment, "M-step layout and embeddings disagree");
  }
  CheckAssignments(assignments, layout.groups(), k);
  const std::size_t dim = embeddings.dim();
  MStepResult result;
  result.topic_vectors = Matrix(k, dim, 0.0);
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t g = 0; g < assignments.size(); ++g) {
    const auto t = static_cast<std::size_t>(assignments[g]);
    ++sizes[t];
    auto sum = result.topic_vectors.row(t);
    const auto v = embeddings.row(g);
    for (std::size_t i = 0; i < dim; ++i) sum[i] += static_cast<double>(v[i]);
  }
  std::vector<bool> live(k, false);
  for (std::size_t t = 0; t < k; ++t) {
    if (sizes[t] == 0) continue;
    live[t] = true;
    for (double &x : result.topic_vectors.row(t)) x /= static_cast<double>(sizes[t]);
  }

  // Farthest-point reseeding of empty topics, one at a time.
  if (embeddings.rows() > 0) {
    std::vector<double> row_norms(embeddings.rows());
    for (std::size_t g = 0; g < embeddings.rows(); ++g) row_norms[g] = Norm(embeddings.row(g));
    for (std::size_t t = 0; t < k; ++t) {
      if (live[t]) continue;
      const std::vector<double> norms = RowNorms(result.topic_vectors);
      std::size_t farthest = 0;
      double farthest_cosine = std::numeric_limits<double>::infinity();
      for (std::size_t g = 0; g < embeddings.rows(); ++g) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t u = 0; u < k; ++u) {
          if (!live[u]) continue;
          best = std::max(best, CentroidCosine(embeddings.row(g), row_norms[g],
                                               result.topic_vectors.row(u), norms[u]));
        }
        if (best < farthest_cosine) {
          farthest_cosine = best;
          farthest = g;
        }
      }
      const auto v = embeddings.row(farthest);
      std::copy(v.begin(), v.end(), result.topic_vectors.row(t).begin());
      live[t] = true;
      result.reseeded.push_back(static_cast<int>(t));
    }
  }
  result.topic_doc = PriorUpdate(layout, assignments, c, k);
  return result;
}

double Anneal(double c, double alpha) { return std::max(c / 2.0, alpha); }

TopicModel Fit(const EmbeddingMatrix &embeddings, const DocumentLayout &layout,
               const SenCluParams &params, const FitObserver &observer) {
  params.Validate();
  if (layout.groups() != embeddings.rows()) {
    throw Error(ErrorCode::kAlignment,
                "embedding has " + std::to_string(embeddings.rows()) +
                    " rows but the corpus has " + std::to_string(layout.groups()) +
                    " sentence groups");
  }
  const auto k = static_cast<std::size_t>(params.k);
  TopicModel model;
  model.params = params;
  model.topic_vectors = InitTopics(embeddings, params.k, params.seed);
  model.topic_doc = Matrix(layout.documents(), k, 1.0 / static_cast<double>(k));
  model.assignments.assign(layout.groups(), -1);

  double c = params.InitialSmoothing();
  for (int epoch = 1; epoch <= params.epochs; ++epoch) {
    std::vector<int> assignments =
        EStep(embeddings, layout, model.topic_vectors, model.topic_doc, epoch,
              params.epochs, params.seed, params.threads);
    EpochRecord record{epoch, c, 0};
    for (std::size_t g = 0; g < assignments.size(); ++g) {
      if (assignments[g] != model.assignments[g]) ++record.changed;
    }
    MStepResult m = MStep(embeddings, layout, assignments, c, k);
    model.topic_vectors = std::move(m.topic_vectors);
    model.topic_doc = std::move(m.topic_doc);
    model.assignments = std::move(assignments);
    model.epoch_log.push_back(record);
    if (observer) observer(record, model.topic_doc);
    c = Anneal(c, params.alpha);
  }
  return model;
}

TopicModel Fit(const Corpus &corpus, const EmbeddingMatrix &embeddings,
               const SenCluParams &params, const FitObserver &observer) {
  CheckAlignment(embeddings, corpus);
  TopicModel model = Fit(embeddings, corpus.layout(), params, observer);
  model.params.group_size = static_cast<int>(corpus.group_size());
  model.doc_ids.reserve(corpus.document_count());
  for (const auto &d : corpus.documents()) model.doc_ids.push_back(d.id);
  return model;
}

Matrix Transform(const TopicModel &model, const EmbeddingMatrix &embeddings,
                 const DocumentLayout &layout, unsigned threads) {
  if (embeddings.rows() > 0 && embeddings.dim() != model.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "model dim " + std::to_string(model.dim()) + " but new embeddings have dim " +
                    std::to_string(embeddings.dim()));
  }
  if (layout.groups() != embeddings.rows()) {
    throw Error(ErrorCode::kAlignment, "new embeddings do not match the new corpus");
  }
  const std::size_t k = model.topics();
  Matrix topic_doc(layout.documents(), k, 1.0 / static_cast<double>(k));
  if (layout.documents() == 0) return topic_doc;
  for (int it = 0; it < kTransformIterations; ++it) {
    // epoch == epochs makes the rank rule always pick the best topic.
    const auto assignments = EStep(embeddings, layout, model.topic_vectors, topic_doc, 1, 1,
                                   model.params.seed, threads);
    topic_doc = PriorUpdate(layout, assignments, model.params.alpha, k);
  }
  return topic_doc;
}

}  // namespace bos
