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

#ifndef BOS_TOPIC_REPORT_HPP_
#define BOS_TOPIC_REPORT_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bos/corpus.hpp"
#include "json.hpp"

namespace bos {

// Occurrence statistics of one word.
struct WordCounts {
  // n(w|t) for every topic.
  std::vector<std::int64_t> per_topic;
  // n(w) = sum over topics.
  std::int64_t total = 0;
  // max over documents of n(w|d).
  std::int64_t max_in_document = 0;
};

struct WordTopicCounts {
  std::size_t num_topics = 0;
  // Ordered by word so reports are reproducible.
  std::map<std::string, WordCounts, std::less<>> words;

  // Throws kInvalidParameter for an unknown word.
  const WordCounts &at(std::string_view word) const;
};

// Every word of a group counts towards the group's topic.
WordTopicCounts CountWords(const Corpus &corpus, const std::vector<int> &assignments,
                           std::size_t num_topics);

// n(w)/|T| + population std of n(w|t) + max_d n(w|d).
double MinimumCount(const WordCounts &counts, std::size_t num_topics);

// sqrt(max(n(w|t) - n_min, 0)) * (p(t|w) - 1/|T|). Values <= 0 are not
// reported.
double WordScore(const WordCounts &counts, std::size_t topic, std::size_t num_topics);

inline double MinimumCount(std::string_view word, const WordTopicCounts &counts) {
  return MinimumCount(counts.at(word), counts.num_topics);
}
inline double WordScore(std::string_view word, std::size_t topic,
                        const WordTopicCounts &counts) {
  return WordScore(counts.at(word), topic, counts.num_topics);
}

struct ScoredWord {
  std::string word;
  double score = 0.0;
};

// Per topic, positive-scoring words by descending score (ascending word on
// ties), at most top_n of them.
using TopicWordList = std::vector<std::vector<ScoredWord>>;

// Strips a final "ing", "es", "ed" or "s" (first that leaves >= 3 letters).
std::string StemWord(std::string_view word);

// With postprocess, words are stemmed and duplicates merged (max score)
// before truncation.
TopicWordList TopWords(const WordTopicCounts &counts, std::size_t top_n, bool postprocess);

// [{"topic": t, "words": [{"w": ..., "score": ...}]}]
nlohmann::ordered_json TopicWordsToJson(const TopicWordList &topics);
// One line per topic: "<t>: w1 w2 ..." with at most `width` words.
std::string TopicWordsToText(const TopicWordList &topics, std::size_t width = 10);

}  // namespace bos

#endif  // BOS_TOPIC_REPORT_HPP_
