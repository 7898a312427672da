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

#include "bos/bos.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <new>
#include <string>

#include "bos/corpus.hpp"
#include "bos/embedding.hpp"
#include "bos/error.hpp"
#include "bos/evaluation.hpp"
#include "bos/model_io.hpp"
#include "bos/senclu.hpp"
#include "bos/topic_report.hpp"
#include "bos/triplets.hpp"
#include "json.hpp"

struct bos_corpus {
  bos::Corpus corpus;
  bos::LoadReport report;
};

struct bos_embeddings {
  bos::EmbeddingMatrix matrix;
};

struct bos_triplets {
  bos::TripletSet triplets;
};

struct bos_model {
  bos::TopicModel model;
};

namespace {

thread_local std::string g_last_error;

bos_status Fail(bos_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body and maps exceptions onto status codes.
template <typename Body>
bos_status Guard(Body &&body) {
  try {
    body();
    return BOS_OK;
  } catch (const bos::Error &e) {
    return Fail(static_cast<bos_status>(e.code()), e.what());
  } catch (const std::bad_alloc &) {
    return Fail(BOS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return Fail(BOS_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(BOS_ERR_INTERNAL, "unknown exception");
  }
}

void Require(bool condition, const char *what) {
  if (!condition) {
    throw bos::Error(bos::ErrorCode::kInvalidParameter, std::string(what) + " is NULL");
  }
}

nlohmann::ordered_json ParseProvenance(const char *provenance_json) {
  if (provenance_json == nullptr) return nullptr;
  auto j = nlohmann::ordered_json::parse(provenance_json, nullptr, false);
  if (j.is_discarded()) {
    throw bos::Error(bos::ErrorCode::kInvalidParameter, "provenance is not valid JSON");
  }
  return j;
}

bos::SenCluParams ToParams(const bos_senclu_params &p) {
  bos::SenCluParams params;
  params.k = p.k;
  params.alpha = p.alpha;
  params.epochs = p.epochs;
  params.group_size = p.n_s;
  params.seed = p.seed;
  params.threads = p.threads;
  return params;
}

}  // namespace

extern "C" {

const char *bos_version(void) { return "1.0.0"; }

const char *bos_status_name(bos_status status) {
  if (status == BOS_OK) return "ok";
  if (status == BOS_ERR_INTERNAL) return "internal error";
  return bos::ErrorCodeName(static_cast<bos::ErrorCode>(status));
}

const char *bos_last_error(void) { return g_last_error.c_str(); }

bos_status bos_corpus_load(const char *path, int n_s, bos_corpus **out) {
  return Guard([&] {
    Require(path != nullptr, "path");
    Require(out != nullptr, "out");
    auto loaded = bos::LoadCorpus(path, n_s);
    *out = new bos_corpus{std::move(loaded.corpus), loaded.report};
  });
}

void bos_corpus_free(bos_corpus *corpus) { delete corpus; }

size_t bos_corpus_documents(const bos_corpus *c) { return c ? c->corpus.document_count() : 0; }
size_t bos_corpus_groups(const bos_corpus *c) { return c ? c->corpus.group_count() : 0; }
size_t bos_corpus_group_size(const bos_corpus *c) { return c ? c->corpus.group_size() : 0; }
size_t bos_corpus_records(const bos_corpus *c) { return c ? c->report.records : 0; }
size_t bos_corpus_dropped(const bos_corpus *c) { return c ? c->report.dropped : 0; }

bos_status bos_corpus_write_groups(const bos_corpus *corpus, const char *path) {
  return Guard([&] {
    Require(corpus != nullptr, "corpus");
    Require(path != nullptr, "path");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw bos::Error(bos::ErrorCode::kIo, std::string("cannot write ") + path);
    for (const auto &e : bos::CorpusIndex(corpus->corpus)) {
      const auto &g = corpus->corpus.GroupAt(e.row);
      nlohmann::ordered_json j;
      j["row"] = e.row;
      j["doc"] = e.doc;
      j["group"] = e.group;
      j["sentences"] = g.sentences;
      j["words"] = g.words;
      out << j.dump() << '\n';
    }
    if (!out) throw bos::Error(bos::ErrorCode::kIo, std::string("failed writing ") + path);
  });
}

bos_status bos_embeddings_load(const char *path, bos_embeddings **out) {
  return Guard([&] {
    Require(path != nullptr, "path");
    Require(out != nullptr, "out");
    *out = new bos_embeddings{bos::LoadEmbeddings(path)};
  });
}

bos_status bos_embeddings_load_for(const char *path, const bos_corpus *corpus,
                                   bos_embeddings **out) {
  return Guard([&] {
    Require(path != nullptr, "path");
    Require(corpus != nullptr, "corpus");
    Require(out != nullptr, "out");
    auto matrix = bos::LoadEmbeddings(path);
    const auto index_path = bos::IndexPath(path);
    if (std::filesystem::exists(index_path)) {
      const auto index = bos::LoadIndex(index_path);
      bos::CheckAlignment(matrix, corpus->corpus, &index);
    } else {
      bos::CheckAlignment(matrix, corpus->corpus);
    }
    *out = new bos_embeddings{std::move(matrix)};
  });
}

bos_status bos_embeddings_from_rows(const float *data, size_t rows, size_t dim,
                                    bos_embeddings **out) {
  return Guard([&] {
    Require(data != nullptr || rows * dim == 0, "data");
    Require(out != nullptr, "out");
    std::vector<float> values(data, data + rows * dim);
    *out = new bos_embeddings{bos::Normalize(bos::EmbeddingMatrix(rows, dim, std::move(values)))};
  });
}

bos_status bos_embeddings_request(const bos_corpus *corpus, const char *command,
                                  const char *out_path, bos_embeddings **out) {
  return Guard([&] {
    Require(corpus != nullptr, "corpus");
    Require(command != nullptr, "command");
    Require(out_path != nullptr, "out_path");
    Require(out != nullptr, "out");
    *out = new bos_embeddings{bos::RequestEmbeddings(corpus->corpus, command, out_path)};
  });
}

bos_status bos_embeddings_save(const bos_embeddings *embeddings, const bos_corpus *corpus,
                               const char *path) {
  return Guard([&] {
    Require(embeddings != nullptr, "embeddings");
    Require(path != nullptr, "path");
    bos::SaveEmbeddings(path, embeddings->matrix, corpus ? &corpus->corpus : nullptr);
  });
}

size_t bos_embeddings_rows(const bos_embeddings *e) { return e ? e->matrix.rows() : 0; }
size_t bos_embeddings_dim(const bos_embeddings *e) { return e ? e->matrix.dim() : 0; }
void bos_embeddings_free(bos_embeddings *embeddings) { delete embeddings; }

void bos_ft_params_init(bos_ft_params *params) {
  if (params == nullptr) return;
  const bos::FtParams defaults;
  params->f_pos = defaults.f_pos;
  params->f_tri = defaults.f_tri;
  params->margin = defaults.margin;
  params->n_neg = defaults.n_neg;
  params->epochs = defaults.epochs;
  params->seed = defaults.seed;
}

bos_status bos_ft_params_validate(const bos_ft_params *params) {
  return Guard([&] {
    Require(params != nullptr, "params");
    bos::FtParams p;
    p.f_pos = params->f_pos;
    p.f_tri = params->f_tri;
    p.margin = params->margin;
    p.n_neg = params->n_neg;
    p.epochs = params->epochs;
    p.seed = params->seed;
    p.Validate();
  });
}

bos_status bos_triplets_build(const bos_corpus *corpus, int32_t n_neg, uint64_t seed,
                              bos_triplets **out) {
  return Guard([&] {
    Require(corpus != nullptr, "corpus");
    Require(out != nullptr, "out");
    *out = new bos_triplets{bos::BuildTriplets(corpus->corpus, n_neg, seed)};
  });
}

bos_status bos_triplets_filter(const bos_triplets *triplets, const bos_corpus *corpus,
                               const bos_embeddings *embeddings, double f_pos, double f_tri,
                               uint32_t threads, bos_triplets **out) {
  return Guard([&] {
    Require(triplets != nullptr, "triplets");
    Require(corpus != nullptr, "corpus");
    Require(embeddings != nullptr, "embeddings");
    Require(out != nullptr, "out");
    *out = new bos_triplets{bos::FilterTriplets(triplets->triplets, corpus->corpus,
                                                embeddings->matrix, f_pos, f_tri, threads)};
  });
}

size_t bos_triplets_count(const bos_triplets *t) { return t ? t->triplets.size() : 0; }

bos_status bos_triplets_get(const bos_triplets *triplets, size_t i, bos_triplet_ref *out) {
  return Guard([&] {
    Require(triplets != nullptr, "triplets");
    Require(out != nullptr, "out");
    if (i >= triplets->triplets.size()) {
      throw bos::Error(bos::ErrorCode::kInvalidParameter, "triplet index out of range");
    }
    const auto &t = triplets->triplets[i];
    *out = {t.anchor.doc,   t.anchor.index,   t.positive.doc,
            t.positive.index, t.negative.doc, t.negative.index};
  });
}

bos_status bos_triplets_export(const bos_triplets *triplets, const bos_corpus *corpus,
                               const char *path, size_t *written) {
  return Guard([&] {
    Require(triplets != nullptr, "triplets");
    Require(corpus != nullptr, "corpus");
    Require(path != nullptr, "path");
    const std::size_t n = bos::ExportTriplets(triplets->triplets, corpus->corpus, path);
    if (written != nullptr) *written = n;
  });
}

bos_status bos_trainer_config_write(const char *path, double margin, int32_t epochs,
                                    const char *provenance_json) {
  return Guard([&] {
    Require(path != nullptr, "path");
    if (!(margin > 0.0)) throw bos::Error(bos::ErrorCode::kInvalidParameter, "margin must be > 0");
    if (epochs < 1) throw bos::Error(bos::ErrorCode::kInvalidParameter, "epochs must be >= 1");
    nlohmann::ordered_json j;
    j["margin"] = margin;
    j["epochs"] = epochs;
    auto provenance = ParseProvenance(provenance_json);
    if (!provenance.is_null()) j["config"] = std::move(provenance);
    bos::WriteJsonFile(path, j);
  });
}

void bos_triplets_free(bos_triplets *triplets) { delete triplets; }

void bos_senclu_params_init(bos_senclu_params *params) {
  if (params == nullptr) return;
  const bos::SenCluParams defaults;
  params->k = defaults.k;
  params->alpha = defaults.alpha;
  params->epochs = defaults.epochs;
  params->n_s = defaults.group_size;
  params->seed = defaults.seed;
  params->threads = defaults.threads;
}

bos_status bos_model_fit(const bos_corpus *corpus, const bos_embeddings *embeddings,
                         const bos_senclu_params *params, bos_model **out) {
  return Guard([&] {
    Require(corpus != nullptr, "corpus");
    Require(embeddings != nullptr, "embeddings");
    Require(params != nullptr, "params");
    Require(out != nullptr, "out");
    *out = new bos_model{bos::Fit(corpus->corpus, embeddings->matrix, ToParams(*params))};
  });
}

bos_status bos_model_save(const bos_model *model, const char *path,
                          const char *provenance_json) {
  return Guard([&] {
    Require(model != nullptr, "model");
    Require(path != nullptr, "path");
    bos::SaveModel(path, model->model, ParseProvenance(provenance_json));
  });
}

bos_status bos_model_load(const char *path, bos_model **out) {
  return Guard([&] {
    Require(path != nullptr, "path");
    Require(out != nullptr, "out");
    *out = new bos_model{bos::LoadModel(path)};
  });
}

size_t bos_model_topics(const bos_model *m) { return m ? m->model.topics() : 0; }
size_t bos_model_documents(const bos_model *m) { return m ? m->model.topic_doc.rows() : 0; }
size_t bos_model_dim(const bos_model *m) { return m ? m->model.dim() : 0; }
size_t bos_model_groups(const bos_model *m) { return m ? m->model.assignments.size() : 0; }
size_t bos_model_group_size(const bos_model *m) {
  return m ? static_cast<size_t>(m->model.params.group_size) : 0;
}

bos_status bos_model_topic_doc(const bos_model *model, size_t doc, double *out, size_t len) {
  return Guard([&] {
    Require(model != nullptr, "model");
    Require(out != nullptr, "out");
    const auto &p = model->model.topic_doc;
    if (doc >= p.rows()) throw bos::Error(bos::ErrorCode::kInvalidParameter, "document out of range");
    if (len < p.cols()) throw bos::Error(bos::ErrorCode::kInvalidParameter, "output buffer too small");
    const auto row = p.row(doc);
    std::copy(row.begin(), row.end(), out);
  });
}

bos_status bos_model_assignments(const bos_model *model, int32_t *out, size_t len) {
  return Guard([&] {
    Require(model != nullptr, "model");
    Require(out != nullptr, "out");
    const auto &a = model->model.assignments;
    if (len < a.size()) throw bos::Error(bos::ErrorCode::kInvalidParameter, "output buffer too small");
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  });
}

size_t bos_model_epochs_run(const bos_model *m) { return m ? m->model.epoch_log.size() : 0; }

bos_status bos_model_epoch(const bos_model *model, size_t i, double *smoothing,
                           size_t *changed) {
  return Guard([&] {
    Require(model != nullptr, "model");
    if (i >= model->model.epoch_log.size()) {
      throw bos::Error(bos::ErrorCode::kInvalidParameter, "epoch index out of range");
    }
    const auto &e = model->model.epoch_log[i];
    if (smoothing != nullptr) *smoothing = e.smoothing;
    if (changed != nullptr) *changed = e.changed;
  });
}

bos_status bos_model_transform(const bos_model *model, const bos_corpus *corpus,
                               const bos_embeddings *embeddings, uint32_t threads,
                               double *out, size_t len) {
  return Guard([&] {
    Require(model != nullptr, "model");
    Require(corpus != nullptr, "corpus");
    Require(embeddings != nullptr, "embeddings");
    const auto p = bos::Transform(model->model, embeddings->matrix, corpus->corpus.layout(), threads);
    if (p.data().empty()) return;
    Require(out != nullptr, "out");
    if (len < p.data().size()) {
      throw bos::Error(bos::ErrorCode::kInvalidParameter, "output buffer too small");
    }
    std::copy(p.data().begin(), p.data().end(), out);
  });
}

void bos_model_free(bos_model *model) { delete model; }

namespace {

bos::TopicWordList ReportFor(const bos_model *model, const bos_corpus *corpus, size_t top_n,
                             int postprocess) {
  Require(model != nullptr, "model");
  Require(corpus != nullptr, "corpus");
  const auto &m = model->model;
  if (m.assignments.size() != corpus->corpus.group_count()) {
    throw bos::Error(bos::ErrorCode::kAlignment,
                     "model has " + std::to_string(m.assignments.size()) +
                         " group assignments, corpus has " +
                         std::to_string(corpus->corpus.group_count()) + " groups");
  }
  const auto counts = bos::CountWords(corpus->corpus, m.assignments, m.topics());
  return bos::TopWords(counts, top_n, postprocess != 0);
}

}  // namespace

bos_status bos_report_write(const bos_model *model, const bos_corpus *corpus, size_t top_n,
                            int postprocess, const char *json_path, const char *text_path,
                            const char *provenance_json) {
  return Guard([&] {
    const auto provenance = ParseProvenance(provenance_json);
    const auto topics = ReportFor(model, corpus, top_n, postprocess);
    if (json_path != nullptr) {
      bos::WriteJsonFile(json_path, bos::TopicWordsToJson(topics));
      if (!provenance.is_null()) {
        bos::WriteJsonFile(std::string(json_path) + ".config.json", provenance);
      }
    }
    if (text_path != nullptr) {
      std::ofstream out(text_path, std::ios::binary);
      if (!out) throw bos::Error(bos::ErrorCode::kIo, std::string("cannot write ") + text_path);
      out << bos::TopicWordsToText(topics);
    }
  });
}

bos_status bos_report_text(const bos_model *model, const bos_corpus *corpus, size_t top_n,
                           int postprocess, char *buf, size_t cap, size_t *needed) {
  return Guard([&] {
    const std::string text = bos::TopicWordsToText(ReportFor(model, corpus, top_n, postprocess));
    if (needed != nullptr) *needed = text.size() + 1;
    if (buf != nullptr && cap > 0) {
      const std::size_t n = std::min(cap - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
  });
}

bos_status bos_evaluate(const bos_model *model, const bos_corpus *corpus,
                        const bos_corpus *reference, size_t top_n, int postprocess,
                        const char *metrics_path, const char *provenance_json, double *nmi,
                        double *npmi) {
  return Guard([&] {
    Require(model != nullptr, "model");
    Require(corpus != nullptr, "corpus");
    const auto provenance = ParseProvenance(provenance_json);
    bos::EvaluationOptions options;
    options.top_n = top_n;
    options.postprocess = postprocess != 0;
    const auto metrics = bos::Evaluate(model->model, corpus->corpus,
                                       reference ? &reference->corpus : nullptr, options);
    if (metrics_path != nullptr) {
      auto j = bos::MetricsToJson(metrics);
      if (!provenance.is_null()) j["config"] = provenance;
      bos::WriteJsonFile(metrics_path, j);
    }
    if (nmi != nullptr) *nmi = metrics.nmi.value_or(std::numeric_limits<double>::quiet_NaN());
    if (npmi != nullptr) *npmi = metrics.npmi.mean;
  });
}

}  // extern "C"
