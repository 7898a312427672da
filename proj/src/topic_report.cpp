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

#include "bos/topic_report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "bos/error.hpp"

namespace bos {

const WordCounts &WordTopicCounts::at(std::string_view word) const {
  auto it = words.find(word);
  if (it == words.end()) {
    throw Error(ErrorCode::kInvalidParameter, "word \"" + std::string(word) + "\" not counted");
  }
  return it->second;
}

WordTopicCounts CountWords(const Corpus &corpus, const std::vector<int> &assignments,
                           std::size_t num_topics) {
  if (num_topics == 0) throw Error(ErrorCode::kInvalidParameter, "num_topics must be >= 1");
  if (assignments.size() != corpus.group_count()) {
    throw Error(ErrorCode::kAlignment,
                "assignments cover " + std::to_string(assignments.size()) +
                    " groups, corpus has " + std::to_string(corpus.group_count()));
  }
  WordTopicCounts counts;
  counts.num_topics = num_topics;
  std::unordered_map<std::string_view, std::int64_t> in_document;
  for (std::size_t d = 0; d < corpus.document_count(); ++d) {
    in_document.clear();
    const auto &doc = corpus.document(d);
    for (std::size_t g = 0; g < doc.groups.size(); ++g) {
      const int topic = assignments[corpus.Row(d, g)];
      if (topic < 0 || static_cast<std::size_t>(topic) >= num_topics) {
        throw Error(ErrorCode::kInvalidParameter, "assignment outside [0, k)");
      }
      for (const auto &w : doc.groups[g].words) {
        auto [it, inserted] = counts.words.try_emplace(w);
        if (inserted) it->second.per_topic.assign(num_topics, 0);
        ++it->second.per_topic[static_cast<std::size_t>(topic)];
        ++it->second.total;
        ++in_document[w];
      }
    }
    for (const auto &[w, n] : in_document) {
      auto &entry = counts.words.find(w)->second;
      entry.max_in_document = std::max(entry.max_in_document, n);
    }
  }
  return counts;
}

double MinimumCount(const WordCounts &counts, std::size_t num_topics) {
  const double k = static_cast<double>(num_topics);
  const double mean = static_cast<double>(counts.total) / k;
  double variance = 0.0;
  for (std::int64_t n : counts.per_topic) {
    const double d = static_cast<double>(n) - mean;
    variance += d * d;
  }
  variance /= k;
  return mean + std::sqrt(variance) + static_cast<double>(counts.max_in_document);
}

double WordScore(const WordCounts &counts, std::size_t topic, std::size_t num_topics) {
  if (counts.total <= 0) return 0.0;
  const double n = static_cast<double>(counts.per_topic.at(topic));
  const double frequency = std::sqrt(std::max(n - MinimumCount(counts, num_topics), 0.0));
  const double relevance =
      n / static_cast<double>(counts.total) - 1.0 / static_cast<double>(num_topics);
  return frequency * relevance;
}

std::string StemWord(std::string_view word) {
  for (std::string_view suffix : {"ing", "es", "ed", "s"}) {
    if (word.size() >= suffix.size() + 3 && word.ends_with(suffix)) {
      return std::string(word.substr(0, word.size() - suffix.size()));
    }
  }
  return std::string(word);
}

namespace {

void SortScored(std::vector<ScoredWord> &words) {
  std::sort(words.begin(), words.end(), [](const ScoredWord &a, const ScoredWord &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.word < b.word;
  });
}

}  // namespace

TopicWordList TopWords(const WordTopicCounts &counts, std::size_t top_n, bool postprocess) {
  if (top_n < 1) throw Error(ErrorCode::kInvalidParameter, "top_n must be >= 1");
  TopicWordList topics(counts.num_topics);
  for (std::size_t t = 0; t < counts.num_topics; ++t) {
    auto &list = topics[t];
    for (const auto &[word, wc] : counts.words) {
      const double s = WordScore(wc, t, counts.num_topics);
      if (s > 0.0) list.push_back({word, s});
    }
    if (postprocess) {
      std::map<std::string, double> merged;
      for (const auto &sw : list) {
        auto [it, inserted] = merged.try_emplace(StemWord(sw.word), sw.score);
        if (!inserted) it->second = std::max(it->second, sw.score);
      }
      list.clear();
      for (auto &[w, s] : merged) list.push_back({w, s});
    }
    SortScored(list);
    if (list.size() > top_n) list.resize(top_n);
  }
  return topics;
}

nlohmann::ordered_json TopicWordsToJson(const TopicWordList &topics) {
  auto out = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < topics.size(); ++t) {
    auto words = nlohmann::ordered_json::array();
    for (const auto &sw : topics[t]) words.push_back({{"w", sw.word}, {"score", sw.score}});
    out.push_back({{"topic", t}, {"words", std::move(words)}});
  }
  return out;
}

std::string TopicWordsToText(const TopicWordList &topics, std::size_t width) {
  std::ostringstream out;
  for (std::size_t t = 0; t < topics.size(); ++t) {
    out << t << ':';
    for (std::size_t i = 0; i < topics[t].size() && i < width; ++i) {
      out << ' ' << topics[t][i].word;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace bos
