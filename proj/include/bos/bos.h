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

/* C interface to the bag-of-sentences topic modeling library.
 *
 * All objects are opaque handles created by a *_load / *_build / *_fit call
 * and released with the matching *_free. Every fallible call returns a
 * bos_status; on failure bos_last_error() describes what went wrong. Output
 * handles are only written on success. Handles are immutable after
 * creation and may be shared between threads for reading. */

#ifndef BOS_BOS_H_
#define BOS_BOS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BOS_BUILDING_LIBRARY)
#    define BOS_API __declspec(dllexport)
#  else
#    define BOS_API __declspec(dllimport)
#  endif
#else
#  define BOS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bos_status {
  BOS_OK = 0,
  BOS_ERR_INVALID_PARAMETER = 1,
  BOS_ERR_IO = 2,
  BOS_ERR_MALFORMED_RECORD = 3,
  BOS_ERR_DUPLICATE_ID = 4,
  BOS_ERR_FORMAT = 5,
  BOS_ERR_DEGENERATE_VECTOR = 6,
  BOS_ERR_DIMENSION_MISMATCH = 7,
  BOS_ERR_PROVIDER = 8,
  BOS_ERR_ALIGNMENT = 9,
  BOS_ERR_INSUFFICIENT_DATA = 10,
  BOS_ERR_OVER_FILTERING = 11,
  BOS_ERR_INTEGRITY = 12,
  BOS_ERR_UNDEFINED_COHERENCE = 13,
  BOS_ERR_INTERNAL = 100
} bos_status;

typedef struct bos_corpus bos_corpus;
typedef struct bos_embeddings bos_embeddings;
typedef struct bos_triplets bos_triplets;
typedef struct bos_model bos_model;

BOS_API const char *bos_version(void);
BOS_API const char *bos_status_name(bos_status status);
/* Message of the most recent failure on the calling thread. */
BOS_API const char *bos_last_error(void);

/* ---- corpus ---------------------------------------------------------- */

/* Loads a JSONL corpus ({"id", "text", "label"?} per line) and groups
 * sentences n_s at a time. */
BOS_API bos_status bos_corpus_load(const char *path, int n_s, bos_corpus **out);
BOS_API void bos_corpus_free(bos_corpus *corpus);
BOS_API size_t bos_corpus_documents(const bos_corpus *corpus);
BOS_API size_t bos_corpus_groups(const bos_corpus *corpus);
BOS_API size_t bos_corpus_group_size(const bos_corpus *corpus);
/* Records read and records dropped for having no sentences. */
BOS_API size_t bos_corpus_records(const bos_corpus *corpus);
BOS_API size_t bos_corpus_dropped(const bos_corpus *corpus);
/* Dumps the group enumeration, one JSON object per line:
 * {"row", "doc", "group", "sentences": [...], "words": [...]}. */
BOS_API bos_status bos_corpus_write_groups(const bos_corpus *corpus, const char *path);

/* ---- embeddings ------------------------------------------------------ */

/* Loads an EMB1 file and normalizes its rows. */
BOS_API bos_status bos_embeddings_load(const char *path, bos_embeddings **out);
/* As bos_embeddings_load, then checks the rows line up with the corpus
 * (row count, and the "<path>.idx.jsonl" companion when present). */
BOS_API bos_status bos_embeddings_load_for(const char *path, const bos_corpus *corpus,
                                           bos_embeddings **out);
/* Copies a row-major rows x dim block and normalizes it. */
BOS_API bos_status bos_embeddings_from_rows(const float *data, size_t rows, size_t dim,
                                            bos_embeddings **out);
/* Runs an external provider: group texts as JSONL on stdin, output path as
 * its last argument; the provider writes EMB1 there. */
BOS_API bos_status bos_embeddings_request(const bos_corpus *corpus, const char *command,
                                          const char *out_path, bos_embeddings **out);
/* Writes EMB1, plus the index companion when corpus is not NULL. */
BOS_API bos_status bos_embeddings_save(const bos_embeddings *embeddings,
                                       const bos_corpus *corpus, const char *path);
BOS_API size_t bos_embeddings_rows(const bos_embeddings *embeddings);
BOS_API size_t bos_embeddings_dim(const bos_embeddings *embeddings);
BOS_API void bos_embeddings_free(bos_embeddings *embeddings);

/* ---- fine-tuning triplets -------------------------------------------- */

typedef struct bos_ft_params {
  double f_pos;  /* 0.08 */
  double f_tri;  /* 0.24 */
  double margin; /* 0.16 */
  int32_t n_neg; /* 2 */
  int32_t epochs; /* 4 */
  uint64_t seed;
} bos_ft_params;

/* Anchor/positive/negative as (document index, group index) pairs. */
typedef struct bos_triplet_ref {
  size_t anchor_doc, anchor_group;
  size_t positive_doc, positive_group;
  size_t negative_doc, negative_group;
} bos_triplet_ref;

BOS_API void bos_ft_params_init(bos_ft_params *params);
BOS_API bos_status bos_ft_params_validate(const bos_ft_params *params);
BOS_API bos_status bos_triplets_build(const bos_corpus *corpus, int32_t n_neg, uint64_t seed,
                                      bos_triplets **out);
BOS_API bos_status bos_triplets_filter(const bos_triplets *triplets, const bos_corpus *corpus,
                                       const bos_embeddings *embeddings, double f_pos,
                                       double f_tri, uint32_t threads, bos_triplets **out);
BOS_API size_t bos_triplets_count(const bos_triplets *triplets);
BOS_API bos_status bos_triplets_get(const bos_triplets *triplets, size_t i,
                                    bos_triplet_ref *out);
BOS_API bos_status bos_triplets_export(const bos_triplets *triplets, const bos_corpus *corpus,
                                       const char *path, size_t *written);
/* Trainer sidecar {"margin", "epochs", "config"?}. provenance_json may be
 * NULL. */
BOS_API bos_status bos_trainer_config_write(const char *path, double margin, int32_t epochs,
                                            const char *provenance_json);
BOS_API void bos_triplets_free(bos_triplets *triplets);

/* ---- topic model ----------------------------------------------------- */

typedef struct bos_senclu_params {
  int32_t k;       /* 50 */
  double alpha;    /* 2 */
  int32_t epochs;  /* 10 */
  int32_t n_s;     /* 3; informational, grouping happens at corpus load */
  uint64_t seed;
  uint32_t threads; /* E-step workers; does not change results */
} bos_senclu_params;

BOS_API void bos_senclu_params_init(bos_senclu_params *params);
BOS_API bos_status bos_model_fit(const bos_corpus *corpus, const bos_embeddings *embeddings,
                                 const bos_senclu_params *params, bos_model **out);
/* provenance_json, when not NULL, is embedded as the "config" member. */
BOS_API bos_status bos_model_save(const bos_model *model, const char *path,
                                  const char *provenance_json);
BOS_API bos_status bos_model_load(const char *path, bos_model **out);
BOS_API size_t bos_model_topics(const bos_model *model);
BOS_API size_t bos_model_documents(const bos_model *model);
BOS_API size_t bos_model_dim(const bos_model *model);
BOS_API size_t bos_model_groups(const bos_model *model);
/* n_s the model's corpus was grouped with. */
BOS_API size_t bos_model_group_size(const bos_model *model);
/* p(.|d) for one document into out[0..k). */
BOS_API bos_status bos_model_topic_doc(const bos_model *model, size_t doc, double *out,
                                       size_t len);
BOS_API bos_status bos_model_assignments(const bos_model *model, int32_t *out, size_t len);
BOS_API size_t bos_model_epochs_run(const bos_model *model);
BOS_API bos_status bos_model_epoch(const bos_model *model, size_t i, double *smoothing,
                                   size_t *changed);
/* Topic mixtures of unseen documents, documents x k values into out. */
BOS_API bos_status bos_model_transform(const bos_model *model, const bos_corpus *corpus,
                                       const bos_embeddings *embeddings, uint32_t threads,
                                       double *out, size_t len);
BOS_API void bos_model_free(bos_model *model);

/* ---- reports and evaluation ------------------------------------------ */

/* Top-word report. json_path gets [{"topic", "words": [{"w", "score"}]}],
 * text_path one line per topic; either may be NULL. A non-NULL provenance
 * is written next to the JSON report as "<json_path>.config.json". */
BOS_API bos_status bos_report_write(const bos_model *model, const bos_corpus *corpus,
                                    size_t top_n, int postprocess, const char *json_path,
                                    const char *text_path, const char *provenance_json);
/* Text form of the report into buf (always NUL terminated when cap > 0);
 * *needed receives the full length including the terminator. */
BOS_API bos_status bos_report_text(const bos_model *model, const bos_corpus *corpus,
                                   size_t top_n, int postprocess, char *buf, size_t cap,
                                   size_t *needed);

/* NMI against corpus labels and NPMI against reference (NULL: the corpus
 * itself). *nmi is NaN when no document is labelled. metrics_path, when not
 * NULL, receives the metrics JSON. */
BOS_API bos_status bos_evaluate(const bos_model *model, const bos_corpus *corpus,
                                const bos_corpus *reference, size_t top_n, int postprocess,
                                const char *metrics_path, const char *provenance_json,
                                double *nmi, double *npmi);

#ifdef __cplusplus
}
#endif

#endif /* BOS_BOS_H_ */
