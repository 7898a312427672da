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

// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when a
// criterion outside kKnownFailures fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bos/corpus.hpp"
#include "bos/embedding.hpp"
#include "bos/evaluation.hpp"
#include "bos/model_io.hpp"
#include "bos/random.hpp"
#include "bos/senclu.hpp"
#include "bos/topic_report.hpp"
#include "bos/triplets.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "scratch.hpp"
#include "themed_corpus.hpp"

namespace bos {
namespace {

// Criteria that fail with the specified algorithm. See README.md.
const std::set<std::string> kKnownFailures = {"planted-topic-recovery"};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failed checks, keeping the first few messages.
class Checker {
 public:
  void Expect(bool ok, const std::string &what) {
    ++checks_;
    if (ok) return;
    if (++failures_ <= 3) first_ << (failures_ > 1 ? "; " : "") << what;
  }

  Outcome Finish(const std::string &summary) const {
    std::ostringstream s;
    s << summary << " (" << checks_ << " checks";
    if (failures_ > 0) s << ", " << failures_ << " failed: " << first_.str();
    s << ")";
    return {failures_ == 0, s.str()};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::ostringstream first_;
};

std::string Fixed(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

Outcome PlantedRecovery() {
  int good = 0;
  double slowest = 0.0;
  std::string nmis;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto data = testing::PlantedClusters(seed, 300, 6, 3, 16, 0.9, 15);
    SenCluParams p;
    p.k = 3;
    p.alpha = 2.0;
    p.epochs = 10;
    p.seed = seed;
    const auto start = std::chrono::steady_clock::now();
    const TopicModel m = Fit(data.corpus, data.embeddings, p);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    slowest = std::max(slowest, secs);
    const double nmi = NormalizedMutualInformation(DocumentClusters(m.topic_doc), data.doc_cluster);
    if (nmi >= 0.9) ++good;
    nmis += (nmis.empty() ? "" : " ") + Fixed(nmi, 3);
  }
  const bool pass = good >= 9 && slowest < 10.0;
  return {pass, std::to_string(good) + "/10 seeds with NMI >= 0.9 [" + nmis +
                    "], slowest fit " + Fixed(slowest, 3) + " s"};
}

Outcome DistributionNormalization() {
  Checker check;
  double worst_sum = 0.0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const bool planted = seed % 3 == 0;
    const auto inst = planted ? testing::RandomInstance{} : testing::SmallInstance(seed, 60);
    const auto data = planted ? testing::PlantedClusters(seed, 40, 1 + seed % 7, 3, 6, 0.8, 30)
                              : testing::PlantedData{};
    const Corpus &corpus = planted ? data.corpus : inst.corpus;
    const EmbeddingMatrix &emb = planted ? data.embeddings : inst.emb;
    SenCluParams p;
    p.k = 1 + static_cast<int>(seed % 5);
    if (static_cast<std::size_t>(p.k) > emb.rows()) p.k = 1;
    p.alpha = seed % 2 == 0 ? 2.0 : 0.25 + static_cast<double>(seed % 7);
    p.epochs = 8;
    p.seed = seed;
    const auto &layout = corpus.layout();
    Fit(corpus, emb, p, [&](const EpochRecord &r, const Matrix &topic_doc) {
      for (std::size_t d = 0; d < topic_doc.rows(); ++d) {
        double sum = 0.0, low = 1.0;
        for (double x : topic_doc.row(d)) sum += x, low = std::min(low, x);
        worst_sum = std::max(worst_sum, std::fabs(sum - 1.0));
        check.Expect(std::fabs(sum - 1.0) <= 1e-6,
                     "seed " + std::to_string(seed) + " epoch " + std::to_string(r.epoch) +
                         " sum " + std::to_string(sum));
        if (p.alpha == 2.0) {
          const double floor = 2.0 / (static_cast<double>(layout.size(d)) + 2.0 * p.k);
          check.Expect(low >= floor - 1e-12, "seed " + std::to_string(seed) + " min " +
                                                 std::to_string(low) + " < " +
                                                 std::to_string(floor));
        }
      }
    });
  }
  char worst[32];
  std::snprintf(worst, sizeof worst, "%.1e", worst_sum);
  return check.Finish(std::string("max |sum - 1| = ") + worst);
}

Outcome Annealing() {
  Checker check;
  for (double alpha : {0.5, 1.0, 2.0, 3.0, 8.0, 12.5}) {
    SenCluParams p;
    p.alpha = alpha;
    check.Expect(p.InitialSmoothing() == std::max(8.0, alpha), "c0 for alpha " + Fixed(alpha));
  }
  const Corpus corpus = testing::ShapeCorpus({5, 4, 6, 3});
  const auto emb = testing::RandomEmbeddings(3, corpus.group_count(), 4);
  for (int epochs : {1, 3, 10, 15}) {
    SenCluParams p;
    p.k = 2;
    p.alpha = 2.0;
    p.epochs = epochs;
    const TopicModel m = Fit(corpus, emb, p);
    std::vector<double> expected;
    for (int e = 0; e < epochs; ++e) expected.push_back(e == 0 ? 8.0 : e == 1 ? 4.0 : 2.0);
    std::vector<double> got;
    for (const auto &r : m.epoch_log) got.push_back(r.smoothing);
    check.Expect(got == expected, "epochs " + std::to_string(epochs));
  }
  return check.Finish("c0 = max(8, alpha); alpha=2 gives 8, 4, 2, 2, ...");
}

Outcome TripletLaws() {
  Checker check;
  std::size_t total_built = 0;
  double worst_exact = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const auto sizes = testing::RandomSizes(rng, 12, 8);
    const int n_neg = 1 + static_cast<int>(rng.Index(3));
    const Corpus corpus = testing::ShapeCorpus(sizes);
    const std::string tag = "corpus " + std::to_string(seed);
    const TripletSet built = BuildTriplets(corpus, n_neg, seed);
    total_built += built.size();
    check.Expect(built.size() == oracle::TripletCount(sizes, n_neg), tag + " count");
    if (built.empty()) continue;
    const auto emb = testing::RandomEmbeddings(seed + 77, corpus.group_count(), 5);

    const double f_pos = 0.3 * rng.Uniform(), f_tri = 0.4 * rng.Uniform();
    const TripletSet kept = FilterTriplets(built, corpus, emb, f_pos, f_tri);
    check.Expect(kept == oracle::Filter(built, corpus, emb, f_pos, f_tri), tag + " survivors");
    check.Expect(kept.size() == built.size() - oracle::FloorCount(f_pos, built.size()) -
                                    oracle::FloorCount(f_tri, built.size()),
                 tag + " filter law");

    const FtParams defaults;
    const TripletSet kept_default =
        FilterTriplets(built, corpus, emb, defaults.f_pos, defaults.f_tri);
    check.Expect(kept_default == oracle::Filter(built, corpus, emb, defaults.f_pos, defaults.f_tri),
                 tag + " default survivors");
    const double n = static_cast<double>(built.size());
    const double removed = static_cast<double>(built.size() - kept_default.size());
    const double target = std::floor(0.32 * n + 1e-9);
    check.Expect(std::fabs(removed - target) <= 1.0,
                 tag + " default removal " + Fixed(removed, 0) + " vs " + Fixed(target, 0));
    worst_exact = std::max(worst_exact, std::fabs(removed - 0.32 * n));
  }
  return check.Finish("50 corpora, " + std::to_string(total_built) +
                      " triplets; default removal within 1 of floor(0.32 N), max distance to "
                      "0.32 N is " + Fixed(worst_exact, 2));
}

Outcome FormulaOracles() {
  Checker check;
  WordCounts anchor;
  anchor.per_topic = {6, 2};
  anchor.total = 8;
  anchor.max_in_document = 3;
  check.Expect(std::fabs(MinimumCount(anchor, 2) - 9.0) <= 1e-9, "n_min anchor");
  anchor.per_topic = {50, 0, 0, 0, 0};
  anchor.total = 50;
  anchor.max_in_document = 5;
  const double s = WordScore(anchor, 0, 5);
  check.Expect(std::fabs(s - 3.0984) <= 5e-5, "score anchor " + std::to_string(s));

  std::size_t words = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    Rng rng(seed);
    const auto data = testing::RandomLabelled(rng);
    const Corpus corpus = testing::WordCorpus(data.docs);
    std::vector<int> assignments;
    for (const auto &doc : data.topics) assignments.insert(assignments.end(), doc.begin(), doc.end());
    const auto counts = CountWords(corpus, assignments, data.k);
    for (const auto &[w, c] : counts.words) {
      ++words;
      check.Expect(std::fabs(MinimumCount(w, counts) - oracle::MinimumCount(data, w)) <= 1e-9,
                   "n_min " + w);
      for (std::size_t t = 0; t < data.k; ++t) {
        check.Expect(std::fabs(WordScore(w, t, counts) - oracle::Score(data, w, t)) <= 1e-9,
                     "score " + w);
      }
    }

    const std::size_t n = 1 + rng.Index(6);
    std::vector<int> a(n), b(n);
    for (auto &x : a) x = static_cast<int>(rng.Index(4));
    for (auto &x : b) x = static_cast<int>(rng.Index(4));
    check.Expect(std::fabs(NormalizedMutualInformation(a, b) - oracle::Nmi(a, b)) <= 1e-9, "nmi");

    std::vector<std::set<std::string>> sets;
    for (const auto &doc : data.docs) {
      sets.emplace_back();
      for (const auto &g : doc) sets.back().insert(g.begin(), g.end());
    }
    TopicWordList topics(data.k);
    for (auto &t : topics) {
      std::set<std::string> picked;
      const std::size_t m = rng.Index(7);
      for (std::size_t i = 0; i < m; ++i) picked.insert("w" + std::to_string(rng.Index(33)));
      for (const auto &w : picked) t.push_back({w, 1.0});
    }
    const auto source = BuildCoherenceSource(corpus, TopicVocabulary(topics, 10));
    for (const auto &t : topics) {
      std::vector<std::string> ws;
      for (const auto &sw : t) ws.push_back(sw.word);
      const auto expected = oracle::TopicNpmi(sets, ws);
      std::optional<double> got;
      try {
        got = NpmiCoherence({t}, source, 10).per_topic[0];
      } catch (const Error &) {
      }
      check.Expect(got.has_value() == expected.has_value(), "npmi defined");
      if (got && expected) check.Expect(std::fabs(*got - *expected) <= 1e-9, "npmi value");
    }
  }
  return check.Finish("150 instances, " + std::to_string(words) + " words");
}

struct PipelineFiles {
  std::string model, triplets, report;
};

PipelineFiles RunPipeline(const testing::ScratchDir &dir, unsigned threads) {
  const auto corpus_path = dir / "corpus.jsonl";
  testing::WriteThemedCorpus(corpus_path, 80, 9, true);
  const Corpus corpus = LoadCorpus(corpus_path, 3).corpus;
  const auto emb = RequestEmbeddings(corpus, std::string(BOS_HASH_EMBED_PATH) + " --dim 24",
                                     dir / "groups.emb");

  const TripletSet kept = FilterTriplets(BuildTriplets(corpus, 2, 4), corpus, emb, 0.08, 0.24,
                                         threads);
  ExportTriplets(kept, corpus, dir / "triplets.jsonl");

  SenCluParams p;
  p.k = 4;
  p.seed = 21;
  p.threads = threads;
  const TopicModel m = Fit(corpus, emb, p);
  SaveModel(dir / "model.json", m);
  const auto counts = CountWords(corpus, m.assignments, m.topics());
  WriteJsonFile(dir / "topics.json", TopicWordsToJson(TopWords(counts, 10, false)));

  return {testing::ReadText(dir / "model.json"), testing::ReadText(dir / "triplets.jsonl"),
          testing::ReadText(dir / "topics.json")};
}

Outcome Determinism() {
  Checker check;
  testing::ScratchDir a("accept-a"), b("accept-b"), c("accept-c");
  const PipelineFiles base = RunPipeline(a, 1);
  const PipelineFiles again = RunPipeline(b, 1);
  const PipelineFiles threaded = RunPipeline(c, 4);
  check.Expect(!base.model.empty() && !base.triplets.empty() && !base.report.empty(),
               "empty output");
  for (const auto *other : {&again, &threaded}) {
    const std::string run = other == &again ? "rerun" : "4 threads";
    check.Expect(other->model == base.model, run + " model");
    check.Expect(other->triplets == base.triplets, run + " triplets");
    check.Expect(other->report == base.report, run + " report");
  }
  return check.Finish("model, triplet and report files across reruns and 1 vs 4 threads");
}

Outcome EStepOracle() {
  Checker check;
  std::size_t groups = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const auto inst = testing::SmallInstance(seed, 20);
    const std::size_t k = 1 + seed % 4;
    if (k > inst.emb.rows()) continue;
    SenCluParams p;
    p.k = static_cast<int>(k);
    p.epochs = 2 + static_cast<int>(seed % 9);
    p.alpha = 0.5 + static_cast<double>(seed % 4);
    p.seed = seed;
    const auto &layout = inst.corpus.layout();
    Matrix topics = InitTopics(inst.emb, p.k, seed);
    Matrix prior(layout.documents(), k, 1.0 / static_cast<double>(k));
    double c = p.InitialSmoothing();
    for (int epoch = 1; epoch <= p.epochs; ++epoch) {
      const auto got = EStep(inst.emb, layout, topics, prior, epoch, p.epochs, seed);
      for (std::size_t d = 0; d < layout.documents(); ++d) {
        const int rank =
            k < 2 ? 1 : oracle::Rank(PerturbationDraw(seed, d, epoch), epoch, p.epochs);
        for (std::size_t g = layout.begin(d); g < layout.end(d); ++g) {
          ++groups;
          check.Expect(got[g] == oracle::AssignGroup(inst.emb.row(g), topics, prior.row(d), rank),
                       "seed " + std::to_string(seed) + " epoch " + std::to_string(epoch));
        }
      }
      const auto m = MStep(inst.emb, layout, got, c, k);
      topics = m.topic_vectors;
      prior = m.topic_doc;
      c = Anneal(c, p.alpha);
    }
  }
  return check.Finish(std::to_string(groups) + " group assignments");
}

struct Criterion {
  std::string name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace bos

int main() {
  using bos::Criterion;
  const std::vector<Criterion> criteria = {
      {"planted-topic-recovery", bos::PlantedRecovery},
      {"distribution-normalization", bos::DistributionNormalization},
      {"annealing-schedule", bos::Annealing},
      {"triplet-count-and-filter-laws", bos::TripletLaws},
      {"formula-oracles", bos::FormulaOracles},
      {"determinism", bos::Determinism},
      {"e-step-oracle", bos::EStepOracle},
  };
  int unexpected = 0;
  for (const auto &c : criteria) {
    bos::Outcome out;
    try {
      out = c.run();
    } catch (const std::exception &e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const bool known = bos::kKnownFailures.count(c.name) > 0;
    std::printf("%s %s: %s%s\n", out.pass ? "PASS" : "FAIL", c.name.c_str(), out.detail.c_str(),
                !out.pass && known ? " [known failure]" : "");
    if (!out.pass && !known) ++unexpected;
  }
  std::fflush(stdout);
  return unexpected == 0 ? 0 : 1;
}
