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

#include "bos/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "bos/error.hpp"

namespace bos {

std::vector<int> DocumentClusters(const Matrix &topic_doc) {
  std::vector<int> labels(topic_doc.rows(), 0);
  for (std::size_t d = 0; d < topic_doc.rows(); ++d) {
    const auto row = topic_doc.row(d);
    std::size_t best = 0;
    for (std::size_t t = 1; t < row.size(); ++t) {
      if (row[t] > row[best]) best = t;
    }
    labels[d] = static_cast<int>(best);
  }
  return labels;
}

double NormalizedMutualInformation(std::span<const int> predicted,
                                   std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    throw Error(ErrorCode::kInvalidParameter,
                "label vectors differ in length: " + std::to_string(predicted.size()) +
                    " vs " + std::to_string(truth.size()));
  }
  if (predicted.empty()) throw Error(ErrorCode::kInvalidParameter, "NMI of empty labels");
  const double n = static_cast<double>(predicted.size());
  std::map<int, double> pred_count, truth_count;
  std::map<std::pair<int, int>, double> joint;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    pred_count[predicted[i]] += 1.0;
    truth_count[truth[i]] += 1.0;
    joint[{predicted[i], truth[i]}] += 1.0;
  }
  auto entropy = [n](const std::map<int, double> &counts) {
    double h = 0.0;
    for (const auto &[label, c] : counts) h -= (c / n) * std::log(c / n);
    return h;
  };
  const double h_pred = entropy(pred_count);
  const double h_truth = entropy(truth_count);
  if (pred_count.size() == 1 && truth_count.size() == 1) return 1.0;
  double mi = 0.0;
  for (const auto &[key, c] : joint) {
    const double pij = c / n;
    mi += pij * std::log(c * n / (pred_count[key.first] * truth_count[key.second]));
  }
  const double denom = 0.5 * (h_pred + h_truth);
  return std::clamp(mi / denom, 0.0, 1.0);
}

std::int64_t CoherenceSource::WordFrequency(const std::string &w) const {
  auto it = word_doc_freq.find(w);
  return it == word_doc_freq.end() ? 0 : it->second;
}

std::int64_t CoherenceSource::PairFrequency(const std::string &a, const std::string &b) const {
  auto it = pair_doc_freq.find(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
  return it == pair_doc_freq.end() ? 0 : it->second;
}

CoherenceSource BuildCoherenceSource(const Corpus &reference,
                                     const std::set<std::string> &vocabulary) {
  if (reference.document_count() == 0) {
    throw Error(ErrorCode::kInsufficientData, "coherence reference corpus is empty");
  }
  CoherenceSource source;
  source.doc_count = static_cast<std::int64_t>(reference.document_count());
  std::vector<std::string> present;
  for (const auto &doc : reference.documents()) {
    present.clear();
    for (const auto &g : doc.groups) {
      for (const auto &w : g.words) {
        if (vocabulary.count(w)) present.push_back(w);
      }
    }
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    for (std::size_t i = 0; i < present.size(); ++i) {
      ++source.word_doc_freq[present[i]];
      for (std::size_t j = i + 1; j < present.size(); ++j) {
        ++source.pair_doc_freq[{present[i], present[j]}];
      }
    }
  }
  return source;
}

CoherenceSource BuildCoherenceSource(const std::filesystem::path &reference_path,
                                     const std::set<std::string> &vocabulary) {
  // Grouping does not matter for document-level counts.
  return BuildCoherenceSource(LoadCorpus(reference_path, 1).corpus, vocabulary);
}

std::optional<double> PairNpmi(const CoherenceSource &source, const std::string &a,
                               const std::string &b) {
  const std::int64_t fa = source.WordFrequency(a);
  const std::int64_t fb = source.WordFrequency(b);
  if (fa == 0 || fb == 0) return std::nullopt;
  const double n = static_cast<double>(source.doc_count);
  const std::int64_t fab = source.PairFrequency(a, b);
  const double joint = fab > 0 ? static_cast<double>(fab) / n : 1.0 / n;
  if (joint >= 1.0) return 1.0;
  const double pa = static_cast<double>(fa) / n;
  const double pb = static_cast<double>(fb) / n;
  return std::log(joint / (pa * pb)) / -std::log(joint);
}

std::set<std::string> TopicVocabulary(const TopicWordList &topic_words, std::size_t top_n) {
  std::set<std::string> vocabulary;
  for (const auto &topic : topic_words) {
    for (std::size_t i = 0; i < topic.size() && i < top_n; ++i) vocabulary.insert(topic[i].word);
  }
  return vocabulary;
}

CoherenceResult NpmiCoherence(const TopicWordList &topic_words,
                              const CoherenceSource &source, std::size_t top_n) {
  CoherenceResult result;
  double total = 0.0;
  std::size_t scored_topics = 0;
  for (const auto &topic : topic_words) {
    std::vector<const std::string *> words;
    for (std::size_t i = 0; i < topic.size() && i < top_n; ++i) {
      if (source.WordFrequency(topic[i].word) > 0) words.push_back(&topic[i].word);
    }
    if (words.size() < 2) {
      result.per_topic.emplace_back(std::nullopt);
      continue;
    }
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        sum += *PairNpmi(source, *words[i], *words[j]);
        ++pairs;
      }
    }
    const double topic_score = sum / static_cast<double>(pairs);
    result.per_topic.emplace_back(topic_score);
    total += topic_score;
    ++scored_topics;
  }
  if (scored_topics == 0) {
    throw Error(ErrorCode::kUndefinedCoherence,
                "no topic has two top words occurring in the reference corpus");
  }
  result.mean = total / static_cast<double>(scored_topics);
  return result;
}

Metrics Evaluate(const TopicModel &model, const Corpus &corpus, const Corpus *reference,
                 const EvaluationOptions &options) {
  if (model.topic_doc.rows() != corpus.document_count() ||
      model.assignments.size() != corpus.group_count()) {
    throw Error(ErrorCode::kAlignment, "model was not fitted on this corpus");
  }
  Metrics metrics;
  const std::vector<int> clusters = DocumentClusters(model.topic_doc);
  std::vector<int> predicted, truth;
  std::map<std::string, int> label_ids;
  for (std::size_t d = 0; d < corpus.document_count(); ++d) {
    const auto &label = corpus.document(d).label;
    if (!label) continue;
    auto [it, inserted] = label_ids.try_emplace(*label, static_cast<int>(label_ids.size()));
    predicted.push_back(clusters[d]);
    truth.push_back(it->second);
  }
  metrics.docs_scored = predicted.size();
  if (!predicted.empty()) metrics.nmi = NormalizedMutualInformation(predicted, truth);

  const auto counts = CountWords(corpus, model.assignments, model.topics());
  const auto topics = TopWords(counts, options.top_n, options.postprocess);
  const auto vocabulary = TopicVocabulary(topics, options.top_n);
  const auto source =
      BuildCoherenceSource(reference != nullptr ? *reference : corpus, vocabulary);
  metrics.npmi = NpmiCoherence(topics, source, options.top_n);
  return metrics;
}

nlohmann::ordered_json MetricsToJson(const Metrics &metrics) {
  nlohmann::ordered_json j;
  j["nmi"] = metrics.nmi ? nlohmann::ordered_json(*metrics.nmi) : nlohmann::ordered_json();
  j["npmi"] = metrics.npmi.mean;
  auto per_topic = nlohmann::ordered_json::array();
  for (const auto &s : metrics.npmi.per_topic) {
    per_topic.push_back(s ? nlohmann::ordered_json(*s) : nlohmann::ordered_json());
  }
  j["per_topic_npmi"] = std::move(per_topic);
  j["docs_scored"] = metrics.docs_scored;
  return j;
}

}  // namespace bos
