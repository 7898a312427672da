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

// bostm: command-line driver for the bag-of-sentences topic modeling
// library. Talks to the library only through the C API.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "bos/bos.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct CorpusDeleter { void operator()(bos_corpus *p) const { bos_corpus_free(p); } };
struct EmbeddingsDeleter { void operator()(bos_embeddings *p) const { bos_embeddings_free(p); } };
struct TripletsDeleter { void operator()(bos_triplets *p) const { bos_triplets_free(p); } };
struct ModelDeleter { void operator()(bos_model *p) const { bos_model_free(p); } };

using CorpusPtr = std::unique_ptr<bos_corpus, CorpusDeleter>;
using EmbeddingsPtr = std::unique_ptr<bos_embeddings, EmbeddingsDeleter>;
using TripletsPtr = std::unique_ptr<bos_triplets, TripletsDeleter>;
using ModelPtr = std::unique_ptr<bos_model, ModelDeleter>;

// Carries a library failure up to main().
class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void Check(bos_status status, const std::string &step) {
  if (status == BOS_OK) return;
  throw CommandError(step + ": " + bos_status_name(status) + ": " + bos_last_error());
}

struct Options {
  // Shared
  std::string format = "text";
  unsigned threads = 1;
  std::uint64_t seed = 0;
  int n_s = 3;
  // Inputs and outputs
  std::string corpus;
  std::string embeddings;
  std::string model;
  std::string reference;
  std::string out;
  std::string text_out;
  std::string provider;
  // SenClu
  int k = 50;
  double alpha = 2.0;
  int epochs = 10;
  // FT-Topic
  double f_pos = 0.08;
  double f_tri = 0.24;
  double margin = 0.16;
  int n_neg = 2;
  int ft_epochs = 4;
  // Reports
  std::size_t top_n = 10;
  bool postprocess = false;
  // Pipeline
  std::string workdir = "bos-run";
  std::string finetune_cmd;
  std::string finetuned_provider;
};

void RequireDistinct(const std::vector<std::pair<std::string, std::string>> &paths) {
  std::set<std::string> seen;
  for (const auto &[flag, path] : paths) {
    if (path.empty()) continue;
    std::error_code ec;
    std::string key = fs::weakly_canonical(path, ec).string();
    if (ec) key = path;
    if (!seen.insert(key).second) {
      throw CommandError("path given to " + flag + " is used twice: " + path);
    }
  }
}

CorpusPtr LoadCorpus(const std::string &path, int n_s) {
  bos_corpus *raw = nullptr;
  Check(bos_corpus_load(path.c_str(), n_s, &raw), "loading corpus " + path);
  return CorpusPtr(raw);
}

EmbeddingsPtr LoadEmbeddings(const std::string &path, const bos_corpus *corpus) {
  bos_embeddings *raw = nullptr;
  Check(bos_embeddings_load_for(path.c_str(), corpus, &raw), "loading embeddings " + path);
  return EmbeddingsPtr(raw);
}

ModelPtr LoadModel(const std::string &path) {
  bos_model *raw = nullptr;
  Check(bos_model_load(path.c_str(), &raw), "loading model " + path);
  return ModelPtr(raw);
}

// Provenance: the settings an artifact depends on. --threads is not
// recorded.
Json FitConfig(const Options &o) {
  Json j;
  j["command"] = "fit";
  j["corpus"] = o.corpus;
  j["embeddings"] = o.embeddings;
  j["k"] = o.k;
  j["alpha"] = o.alpha;
  j["epochs"] = o.epochs;
  j["n_s"] = o.n_s;
  j["seed"] = o.seed;
  return j;
}

Json TripletConfig(const Options &o) {
  Json j;
  j["command"] = "triplets";
  j["corpus"] = o.corpus;
  j["embeddings"] = o.embeddings;
  j["n_s"] = o.n_s;
  j["n_neg"] = o.n_neg;
  j["f_pos"] = o.f_pos;
  j["f_tri"] = o.f_tri;
  j["margin"] = o.margin;
  j["ft_epochs"] = o.ft_epochs;
  j["seed"] = o.seed;
  return j;
}

Json ReportConfig(const Options &o, const char *command) {
  Json j;
  j["command"] = command;
  j["model"] = o.model;
  j["corpus"] = o.corpus;
  if (!o.reference.empty()) j["reference"] = o.reference;
  j["top_n"] = o.top_n;
  j["postprocess"] = o.postprocess;
  return j;
}

std::string Num(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

int RunTokenize(const Options &o) {
  RequireDistinct({{"--corpus", o.corpus}, {"--out", o.out}});
  auto corpus = LoadCorpus(o.corpus, o.n_s);
  if (!o.out.empty()) Check(bos_corpus_write_groups(corpus.get(), o.out.c_str()), "writing groups");
  if (o.format == "json") {
    Json j;
    j["documents"] = bos_corpus_documents(corpus.get());
    j["groups"] = bos_corpus_groups(corpus.get());
    j["records"] = bos_corpus_records(corpus.get());
    j["dropped"] = bos_corpus_dropped(corpus.get());
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "documents: " << bos_corpus_documents(corpus.get())
              << "\ngroups: " << bos_corpus_groups(corpus.get())
              << "\ndropped: " << bos_corpus_dropped(corpus.get()) << '\n';
  }
  return 0;
}

int RunEmbed(const Options &o) {
  RequireDistinct({{"--corpus", o.corpus}, {"--out", o.out}});
  auto corpus = LoadCorpus(o.corpus, o.n_s);
  bos_embeddings *raw = nullptr;
  Check(bos_embeddings_request(corpus.get(), o.provider.c_str(), o.out.c_str(), &raw),
        "requesting embeddings");
  EmbeddingsPtr emb(raw);
  if (o.format == "json") {
    Json j;
    j["rows"] = bos_embeddings_rows(emb.get());
    j["dim"] = bos_embeddings_dim(emb.get());
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "rows: " << bos_embeddings_rows(emb.get())
              << "\ndim: " << bos_embeddings_dim(emb.get()) << '\n';
  }
  return 0;
}

struct TripletCounts {
  std::size_t built = 0;
  std::size_t kept = 0;
};

// Builds, filters and exports the triplet set.
TripletCounts WriteTriplets(const Options &o, const bos_corpus *corpus,
                          const bos_embeddings *emb, const std::string &out) {
  bos_ft_params ft;
  bos_ft_params_init(&ft);
  ft.f_pos = o.f_pos;
  ft.f_tri = o.f_tri;
  ft.margin = o.margin;
  ft.n_neg = o.n_neg;
  ft.epochs = o.ft_epochs;
  ft.seed = o.seed;
  Check(bos_ft_params_validate(&ft), "fine-tuning parameters");

  bos_triplets *raw = nullptr;
  Check(bos_triplets_build(corpus, ft.n_neg, ft.seed, &raw), "building triplets");
  TripletsPtr all(raw);
  Check(bos_triplets_filter(all.get(), corpus, emb, ft.f_pos, ft.f_tri, o.threads, &raw),
        "filtering triplets");
  TripletsPtr kept(raw);
  std::size_t written = 0;
  Check(bos_triplets_export(kept.get(), corpus, out.c_str(), &written), "exporting triplets");
  const std::string config = TripletConfig(o).dump();
  Check(bos_trainer_config_write((out + ".config.json").c_str(), ft.margin, ft.epochs,
                                 config.c_str()),
        "writing trainer config");
  return {bos_triplets_count(all.get()), written};
}

int RunTriplets(const Options &o) {
  RequireDistinct({{"--corpus", o.corpus}, {"--emb", o.embeddings}, {"--out", o.out}});
  auto corpus = LoadCorpus(o.corpus, o.n_s);
  auto emb = LoadEmbeddings(o.embeddings, corpus.get());
  const TripletCounts n = WriteTriplets(o, corpus.get(), emb.get(), o.out);
  if (o.format == "json") {
    Json j;
    j["built"] = n.built;
    j["kept"] = n.kept;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "built: " << n.built << "\nkept: " << n.kept << '\n';
  }
  return 0;
}

ModelPtr FitModel(const Options &o, const bos_corpus *corpus, const bos_embeddings *emb) {
  bos_senclu_params params;
  bos_senclu_params_init(&params);
  params.k = o.k;
  params.alpha = o.alpha;
  params.epochs = o.epochs;
  params.n_s = o.n_s;
  params.seed = o.seed;
  params.threads = o.threads;
  bos_model *raw = nullptr;
  Check(bos_model_fit(corpus, emb, &params, &raw), "fitting model");
  return ModelPtr(raw);
}

int RunFit(const Options &o) {
  RequireDistinct({{"--corpus", o.corpus}, {"--emb", o.embeddings}, {"--out", o.out}});
  auto corpus = LoadCorpus(o.corpus, o.n_s);
  auto emb = LoadEmbeddings(o.embeddings, corpus.get());
  auto model = FitModel(o, corpus.get(), emb.get());
  const std::string config = FitConfig(o).dump();
  Check(bos_model_save(model.get(), o.out.c_str(), config.c_str()), "saving model");
  std::cout << "topics: " << bos_model_topics(model.get())
            << "\ndocuments: " << bos_model_documents(model.get()) << '\n';
  return 0;
}

std::string ReportText(const bos_model *model, const bos_corpus *corpus, const Options &o) {
  std::size_t needed = 0;
  Check(bos_report_text(model, corpus, o.top_n, o.postprocess, nullptr, 0, &needed),
        "building report");
  std::string text(needed, '\0');
  Check(bos_report_text(model, corpus, o.top_n, o.postprocess, text.data(), text.size(),
                        &needed),
        "building report");
  text.resize(needed - 1);
  return text;
}

int RunTopics(const Options &o) {
  RequireDistinct({{"--model", o.model}, {"--corpus", o.corpus}, {"--out", o.out},
                   {"--text-out", o.text_out}});
  auto model = LoadModel(o.model);
  auto corpus = LoadCorpus(o.corpus, static_cast<int>(bos_model_group_size(model.get())));
  const std::string config = ReportConfig(o, "topics").dump();
  if (!o.out.empty() || !o.text_out.empty()) {
    Check(bos_report_write(model.get(), corpus.get(), o.top_n, o.postprocess,
                           o.out.empty() ? nullptr : o.out.c_str(),
                           o.text_out.empty() ? nullptr : o.text_out.c_str(),
                           o.out.empty() ? nullptr : config.c_str()),
          "writing report");
  }
  if (o.format == "text") {
    std::cout << ReportText(model.get(), corpus.get(), o);
  } else if (o.out.empty()) {
    // JSON to stdout via a temporary file keeps the C API surface small.
    const fs::path tmp = fs::temp_directory_path() / ("bostm-report-" + std::to_string(::getpid()) + ".json");
    Check(bos_report_write(model.get(), corpus.get(), o.top_n, o.postprocess,
                           tmp.c_str(), nullptr, nullptr),
          "writing report");
    std::ifstream in(tmp);
    std::cout << in.rdbuf();
    fs::remove(tmp);
  }
  return 0;
}

int RunEval(const Options &o) {
  RequireDistinct({{"--model", o.model}, {"--corpus", o.corpus}, {"--out", o.out}});
  auto model = LoadModel(o.model);
  const int n_s = static_cast<int>(bos_model_group_size(model.get()));
  auto corpus = LoadCorpus(o.corpus, n_s);
  CorpusPtr reference;
  if (!o.reference.empty()) reference = LoadCorpus(o.reference, 1);
  const std::string config = ReportConfig(o, "eval").dump();
  double nmi = 0.0, npmi = 0.0;
  Check(bos_evaluate(model.get(), corpus.get(), reference.get(), o.top_n, o.postprocess,
                     o.out.empty() ? nullptr : o.out.c_str(), config.c_str(), &nmi, &npmi),
        "evaluating model");
  if (o.format == "json") {
    Json j;
    j["nmi"] = std::isnan(nmi) ? Json() : Json(nmi);
    j["npmi"] = npmi;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "nmi: " << (std::isnan(nmi) ? std::string("n/a") : Num(nmi))
              << "\nnpmi: " << Num(npmi) << '\n';
  }
  return 0;
}

int RunPipeline(Options o) {
  const fs::path dir = o.workdir;
  fs::create_directories(dir);
  auto corpus = LoadCorpus(o.corpus, o.n_s);
  Check(bos_corpus_write_groups(corpus.get(), (dir / "groups.jsonl").c_str()), "writing groups");
  std::cerr << "corpus: " << bos_corpus_documents(corpus.get()) << " documents, "
            << bos_corpus_groups(corpus.get()) << " groups, " << bos_corpus_dropped(corpus.get())
            << " dropped\n";

  EmbeddingsPtr base;
  if (!o.embeddings.empty()) {
    base = LoadEmbeddings(o.embeddings, corpus.get());
  } else {
    if (o.provider.empty()) throw CommandError("pipeline needs --emb or --provider");
    o.embeddings = (dir / "base.emb").string();
    bos_embeddings *raw = nullptr;
    Check(bos_embeddings_request(corpus.get(), o.provider.c_str(), o.embeddings.c_str(), &raw),
          "requesting base embeddings");
    base.reset(raw);
  }

  const std::string triplet_path = (dir / "triplets.jsonl").string();
  const TripletCounts triplets = WriteTriplets(o, corpus.get(), base.get(), triplet_path);
  std::cerr << "triplets: " << triplets.built << " built, " << triplets.kept << " kept\n";

  const bos_embeddings *fit_emb = base.get();
  EmbeddingsPtr tuned;
  if (!o.finetune_cmd.empty()) {
    if (o.finetuned_provider.empty()) {
      throw CommandError("--finetune-cmd needs --finetuned-provider to re-embed the corpus");
    }
    const std::string cmd = o.finetune_cmd + " '" + triplet_path + "' '" + triplet_path +
                            ".config.json'";
    std::cerr << "fine-tuning: " << cmd << '\n';
    const int rc = std::system(cmd.c_str());
    if (rc != 0) throw CommandError("fine-tuning command failed with status " + std::to_string(rc));
    o.embeddings = (dir / "finetuned.emb").string();
    bos_embeddings *raw = nullptr;
    Check(bos_embeddings_request(corpus.get(), o.finetuned_provider.c_str(),
                                 o.embeddings.c_str(), &raw),
          "requesting fine-tuned embeddings");
    tuned.reset(raw);
    fit_emb = tuned.get();
  }

  auto model = FitModel(o, corpus.get(), fit_emb);
  o.model = (dir / "model.json").string();
  Check(bos_model_save(model.get(), o.model.c_str(), FitConfig(o).dump().c_str()), "saving model");

  const std::string topics_json = (dir / "topics.json").string();
  const std::string topics_text = (dir / "topics.txt").string();
  Check(bos_report_write(model.get(), corpus.get(), o.top_n, o.postprocess, topics_json.c_str(),
                         topics_text.c_str(), ReportConfig(o, "topics").dump().c_str()),
        "writing report");

  CorpusPtr reference;
  if (!o.reference.empty()) reference = LoadCorpus(o.reference, 1);
  const std::string metrics = (dir / "metrics.json").string();
  double nmi = 0.0, npmi = 0.0;
  const bos_status status =
      bos_evaluate(model.get(), corpus.get(), reference.get(), o.top_n, o.postprocess,
                   metrics.c_str(), ReportConfig(o, "eval").dump().c_str(), &nmi, &npmi);
  if (status == BOS_ERR_UNDEFINED_COHERENCE) {
    std::cerr << "warning: " << bos_last_error() << "; metrics.json not written\n";
  } else {
    Check(status, "evaluating model");
  }
  std::cout << ReportText(model.get(), corpus.get(), o);
  if (status == BOS_OK) {
    std::cout << "nmi: " << (std::isnan(nmi) ? std::string("n/a") : Num(nmi))
              << "\nnpmi: " << Num(npmi) << '\n';
  }
  return 0;
}

void AddSenClu(CLI::App *cmd, Options &o) {
  cmd->add_option("--k", o.k, "number of topics")->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "topic prior (floor of the smoothing schedule)")
      ->capture_default_str();
  cmd->add_option("--epochs", o.epochs, "EM epochs")->capture_default_str();
}

void AddFineTune(CLI::App *cmd, Options &o) {
  cmd->add_option("--f-pos", o.f_pos, "fraction removed by anchor-positive distance")
      ->capture_default_str();
  cmd->add_option("--f-tri", o.f_tri, "fraction removed by positive-negative gap")
      ->capture_default_str();
  cmd->add_option("--margin", o.margin, "triplet loss margin for the trainer")
      ->capture_default_str();
  cmd->add_option("--n-neg", o.n_neg, "negatives per anchor-positive pair")
      ->capture_default_str();
  cmd->add_option("--ft-epochs", o.ft_epochs, "fine-tuning epochs for the trainer")
      ->capture_default_str();
}

void AddReport(CLI::App *cmd, Options &o) {
  cmd->add_option("--top-n", o.top_n, "words per topic")->capture_default_str();
  cmd->add_flag("--postprocess", o.postprocess, "stem words and merge duplicates");
}

void AddCommon(CLI::App *cmd, Options &o, bool seed, bool n_s) {
  cmd->add_option("--threads", o.threads, "worker threads")->capture_default_str();
  cmd->add_option("--format", o.format, "stdout format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  if (seed) cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  if (n_s) cmd->add_option("--n-s", o.n_s, "sentences per group")->capture_default_str();
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Bag-of-sentences topic modeling"};
  app.require_subcommand(1);
  Options o;

  auto *tokenize = app.add_subcommand("tokenize", "split a corpus into sentence groups");
  tokenize->add_option("--corpus", o.corpus, "corpus JSONL")->required()->check(CLI::ExistingFile);
  tokenize->add_option("--out", o.out, "group dump (JSONL)");
  AddCommon(tokenize, o, false, true);

  auto *embed = app.add_subcommand("embed", "embed sentence groups with an external provider");
  embed->add_option("--corpus", o.corpus, "corpus JSONL")->required()->check(CLI::ExistingFile);
  embed->add_option("--provider", o.provider, "provider command")->required();
  embed->add_option("--out", o.out, "EMB1 output")->required();
  AddCommon(embed, o, false, true);

  auto *triplets = app.add_subcommand("triplets", "build, filter and export fine-tuning triplets");
  triplets->add_option("--corpus", o.corpus, "corpus JSONL")->required()->check(CLI::ExistingFile);
  triplets->add_option("--emb", o.embeddings, "EMB1 embeddings")->required()->check(CLI::ExistingFile);
  triplets->add_option("--out", o.out, "triplet JSONL (default triplets.jsonl)");
  AddFineTune(triplets, o);
  AddCommon(triplets, o, true, true);

  auto *fit = app.add_subcommand("fit", "fit a SenClu topic model");
  fit->add_option("--corpus", o.corpus, "corpus JSONL")->required()->check(CLI::ExistingFile);
  fit->add_option("--emb", o.embeddings, "EMB1 embeddings")->required()->check(CLI::ExistingFile);
  fit->add_option("--out", o.out, "model JSON (default model.json)");
  AddSenClu(fit, o);
  AddCommon(fit, o, true, true);

  auto *topics = app.add_subcommand("topics", "report top words per topic");
  topics->add_option("--model", o.model, "model JSON")->required()->check(CLI::ExistingFile);
  topics->add_option("--corpus", o.corpus, "corpus JSONL")->required()->check(CLI::ExistingFile);
  topics->add_option("--out", o.out, "JSON report");
  topics->add_option("--text-out", o.text_out, "plain-text report");
  AddReport(topics, o);
  AddCommon(topics, o, false, false);

  auto *eval = app.add_subcommand("eval", "NMI and NPMI of a fitted model");
  eval->add_option("--model", o.model, "model JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("--corpus", o.corpus, "labelled corpus JSONL")->required()->check(CLI::ExistingFile);
  eval->add_option("--reference", o.reference, "NPMI reference corpus (default: --corpus)")
      ->check(CLI::ExistingFile);
  eval->add_option("--out", o.out, "metrics JSON");
  AddReport(eval, o);
  AddCommon(eval, o, false, false);

  auto *pipeline = app.add_subcommand("pipeline", "tokenize, embed, triplets, fit, topics, eval");
  pipeline->add_option("--corpus", o.corpus, "corpus JSONL")->required()->check(CLI::ExistingFile);
  pipeline->add_option("--emb", o.embeddings, "precomputed base EMB1 (skips --provider)")
      ->check(CLI::ExistingFile);
  pipeline->add_option("--provider", o.provider, "base embedding provider command");
  pipeline->add_option("--finetune-cmd", o.finetune_cmd,
                       "trainer command, called with the triplet file and its config");
  pipeline->add_option("--finetuned-provider", o.finetuned_provider,
                       "provider command using the fine-tuned encoder");
  pipeline->add_option("--reference", o.reference, "NPMI reference corpus")
      ->check(CLI::ExistingFile);
  pipeline->add_option("--workdir", o.workdir, "output directory")->capture_default_str();
  AddSenClu(pipeline, o);
  AddFineTune(pipeline, o);
  AddReport(pipeline, o);
  AddCommon(pipeline, o, true, true);

  CLI11_PARSE(app, argc, argv);

  if (fit->parsed() && o.out.empty()) o.out = "model.json";
  if (triplets->parsed() && o.out.empty()) o.out = "triplets.jsonl";
  try {
    if (tokenize->parsed()) return RunTokenize(o);
    if (embed->parsed()) return RunEmbed(o);
    if (triplets->parsed()) return RunTriplets(o);
    if (fit->parsed()) return RunFit(o);
    if (topics->parsed()) return RunTopics(o);
    if (eval->parsed()) return RunEval(o);
    if (pipeline->parsed()) return RunPipeline(o);
  } catch (const std::exception &e) {
    std::cerr << "bostm: error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
