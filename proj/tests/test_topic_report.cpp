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

#include <cmath>
#include <string>
#include <vector>

#include "bos/random.hpp"
#include "bos/topic_report.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace bos {
namespace {

using testing::CodeOf;
using testing::RandomLabelled;

WordCounts Counts(std::vector<std::int64_t> per_topic, std::int64_t max_d) {
  WordCounts c;
  c.total = 0;
  for (auto n : per_topic) c.total += n;
  c.per_topic = std::move(per_topic);
  c.max_in_document = max_d;
  return c;
}

TEST_CASE("count_words examples") {
  const Corpus one = testing::WordCorpus({{{"a", "b", "a"}}});
  const auto c = CountWords(one, {0}, 2);
  CHECK(c.at("a").per_topic == std::vector<std::int64_t>{2, 0});
  CHECK(c.at("b").per_topic == std::vector<std::int64_t>{1, 0});
  CHECK(c.at("a").max_in_document == 2);
  CHECK(c.words.count("zebra") == 0);
  CHECK(CodeOf([&] { c.at("zebra"); }) == ErrorCode::kInvalidParameter);

  const Corpus split = testing::WordCorpus({{{"x"}, {"x"}}});
  const auto s = CountWords(split, {0, 1}, 2);
  CHECK(s.at("x").per_topic == std::vector<std::int64_t>{1, 1});
  CHECK(s.at("x").total == 2);

  CHECK(CodeOf([&] { CountWords(split, {0}, 2); }) == ErrorCode::kAlignment);
  CHECK(CodeOf([&] { CountWords(split, {0, 2}, 2); }) == ErrorCode::kInvalidParameter);
}

TEST_CASE("n_min examples") {
  CHECK(MinimumCount(Counts({6, 2}, 3), 2) == doctest::Approx(9.0));
  CHECK(MinimumCount(Counts({50, 0, 0, 0, 0}, 5), 5) == doctest::Approx(35.0));
  CHECK(MinimumCount(Counts({1, 0}, 1), 2) == doctest::Approx(2.0));
}

TEST_CASE("score examples") {
  CHECK(WordScore(Counts({50, 0, 0, 0, 0}, 5), 0, 5) ==
        doctest::Approx(std::sqrt(15.0) * 0.8).epsilon(1e-12));
  CHECK(WordScore(Counts({50, 0, 0, 0, 0}, 5), 0, 5) == doctest::Approx(3.0984).epsilon(1e-4));
  CHECK(WordScore(Counts({7, 7, 7}, 1), 0, 3) == 0.0);
  CHECK(WordScore(Counts({6, 2}, 3), 0, 2) == 0.0);
  CHECK(WordScore(Counts({50, 0, 0, 0, 0}, 5), 1, 5) == 0.0);
}

TEST_CASE("stemmer") {
  CHECK(StemWord("dogs") == "dog");
  CHECK(StemWord("dog") == "dog");
  CHECK(StemWord("running") == "runn");
  CHECK(StemWord("boxes") == "box");
  CHECK(StemWord("jumped") == "jump");
  CHECK(StemWord("is") == "is");
  CHECK(StemWord("sing") == "sing");
}

WordTopicCounts Table(std::size_t k, std::vector<std::pair<std::string, WordCounts>> entries) {
  WordTopicCounts t;
  t.num_topics = k;
  for (auto &[w, c] : entries) t.words.emplace(w, c);
  return t;
}

TEST_CASE("top_words examples") {
  const auto only = Table(5, {{"atheism", Counts({50, 0, 0, 0, 0}, 5)},
                              {"the", Counts({9, 9, 9, 9, 9}, 3)}});
  const auto lists = TopWords(only, 10, false);
  REQUIRE(lists.size() == 5);
  REQUIRE(lists[0].size() == 1);
  CHECK(lists[0][0].word == "atheism");
  for (std::size_t t = 1; t < 5; ++t) CHECK(lists[t].empty());

  const auto dogs = Table(5, {{"dog", Counts({50, 0, 0, 0, 0}, 5)},
                              {"dogs", Counts({40, 0, 0, 0, 0}, 5)}});
  const auto raw = TopWords(dogs, 10, false);
  CHECK(raw[0].size() == 2);
  const auto merged = TopWords(dogs, 10, true);
  REQUIRE(merged[0].size() == 1);
  CHECK(merged[0][0].word == "dog");
  CHECK(merged[0][0].score == doctest::Approx(WordScore(dogs.at("dog"), 0, 5)));

  CHECK(CodeOf([&] { TopWords(dogs, 0, false); }) == ErrorCode::kInvalidParameter);
}

TEST_CASE("top_words ordering and truncation") {
  const auto table = Table(3, {{"b", Counts({30, 0, 0}, 1)},
                               {"a", Counts({30, 0, 0}, 1)},
                               {"c", Counts({40, 0, 0}, 1)}});
  const auto lists = TopWords(table, 2, false);
  REQUIRE(lists[0].size() == 2);
  CHECK(lists[0][0].word == "c");
  CHECK(lists[0][1].word == "a");
}

TEST_CASE("report rendering") {
  const TopicWordList topics{{{"x", 2.5}, {"y", 1.0}}, {}};
  const auto j = TopicWordsToJson(topics);
  CHECK(j.dump() ==
        R"([{"topic":0,"words":[{"w":"x","score":2.5},{"w":"y","score":1.0}]},{"topic":1,"words":[]}])");
  CHECK(TopicWordsToText(topics) == "0: x y\n1:\n");
  CHECK(TopicWordsToText(topics, 1) == "0: x\n1:\n");
}

TEST_CASE("property: n_min and score match brute force") {
  int positive = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const auto data = RandomLabelled(rng);
    const Corpus corpus = testing::WordCorpus(data.docs);
    std::vector<int> assignments;
    for (const auto &doc : data.topics) assignments.insert(assignments.end(), doc.begin(), doc.end());
    const auto counts = CountWords(corpus, assignments, data.k);
    for (const auto &[w, c] : counts.words) {
      std::int64_t sum = 0;
      for (auto n : c.per_topic) sum += n;
      CHECK(sum == c.total);
      CHECK(c.max_in_document <= c.total);
      CHECK(std::fabs(MinimumCount(w, counts) - oracle::MinimumCount(data, w)) <= 1e-9);
      double share = 0.0;
      for (std::size_t t = 0; t < data.k; ++t) {
        const double s = WordScore(w, t, counts);
        CHECK(std::fabs(s - oracle::Score(data, w, t)) <= 1e-9);
        share += static_cast<double>(c.per_topic[t]) / static_cast<double>(c.total);
        if (s > 0) ++positive;
      }
      CHECK(std::fabs(share - 1.0) <= 1e-12);
    }
    for (const auto &list : TopWords(counts, 10, false)) {
      for (std::size_t i = 0; i < list.size(); ++i) {
        CHECK(list[i].score > 0.0);
        if (i > 0) CHECK(list[i].score <= list[i - 1].score);
      }
    }
  }
  CHECK(positive > 0);
}

TEST_CASE("property: single-document words never score positive") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    auto data = RandomLabelled(rng);
    data.docs.resize(1);
    data.topics.resize(1);
    const Corpus corpus = testing::WordCorpus(data.docs);
    const auto counts = CountWords(corpus, data.topics[0], data.k);
    for (const auto &[w, c] : counts.words) {
      for (std::size_t t = 0; t < data.k; ++t) CHECK(WordScore(c, t, data.k) <= 0.0);
    }
  }
}

}  // namespace
}  // namespace bos
