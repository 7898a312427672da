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

#ifndef BOS_EVALUATION_HPP_
#define BOS_EVALUATION_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bos/corpus.hpp"
#include "bos/matrix.hpp"
#include "bos/senclu.hpp"
#include "bos/topic_report.hpp"
#include "json.hpp"

namespace bos {

// argmax_t p(t|d) per document; ties go to the lowest topic.
std::vector<int> DocumentClusters(const Matrix &topic_doc);

// Mutual information over the arithmetic mean of the two entropies (natural
// log). Two single-cluster partitions score 1. Throws kInvalidParameter on
// a length mismatch or empty input.
double NormalizedMutualInformation(std::span<const int> predicted,
                                   std::span<const int> truth);

// Document-level occurrence counts of a fixed vocabulary.
struct CoherenceSource {
  std::int64_t doc_count = 0;
  std::map<std::string, std::int64_t, std::less<>> word_doc_freq;
  // Keyed by (smaller word, larger word).
  std::map<std::pair<std::string, std::string>, std::int64_t> pair_doc_freq;

  std::int64_t WordFrequency(const std::string &w) const;
  std::int64_t PairFrequency(const std::string &a, const std::string &b) const;
};

// Throws kInsufficientData when the reference has no documents.
CoherenceSource BuildCoherenceSource(const Corpus &reference,
                                     const std::set<std::string> &vocabulary);
CoherenceSource BuildCoherenceSource(const std::filesystem::path &reference_path,
                                     const std::set<std::string> &vocabulary);

// NPMI of a word pair with p = doc_freq / doc_count; a zero joint count is
// replaced by one document (epsilon = 1 / doc_count). Returns nullopt when
// either word never occurs. A pair present in every document scores 1.
std::optional<double> PairNpmi(const CoherenceSource &source, const std::string &a,
                               const std::string &b);

struct CoherenceResult {
  double mean = 0.0;
  // nullopt for topics with fewer than two scorable words.
  std::vector<std::optional<double>> per_topic;
};

// Mean pairwise NPMI over each topic's first top_n words, averaged over the
// topics that have at least two words occurring in the reference. Throws
// kUndefinedCoherence when no topic qualifies.
CoherenceResult NpmiCoherence(const TopicWordList &topic_words,
                              const CoherenceSource &source, std::size_t top_n);

// Vocabulary of the first top_n words of every topic.
std::set<std::string> TopicVocabulary(const TopicWordList &topic_words, std::size_t top_n);

struct Metrics {
  std::optional<double> nmi;
  CoherenceResult npmi;
  std::size_t docs_scored = 0;
};

struct EvaluationOptions {
  std::size_t top_n = 10;
  bool postprocess = false;
};

// NMI against the corpus labels (unlabelled documents excluded; nmi stays
// empty when none are labelled) and NPMI of the model's top words against
// `reference`, or against the modelled corpus itself when null.
Metrics Evaluate(const TopicModel &model, const Corpus &corpus, const Corpus *reference,
                 const EvaluationOptions &options);

// {"nmi", "npmi", "per_topic_npmi", "docs_scored"}
nlohmann::ordered_json MetricsToJson(const Metrics &metrics);

}  // namespace bos

#endif  // BOS_EVALUATION_HPP_
