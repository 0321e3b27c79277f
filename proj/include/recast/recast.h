/* Copyright 2026 The RECAST Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef RECAST_RECAST_H_
#define RECAST_RECAST_H_

/* C interface to the RECAST toxicity scoring engine.
 *
 * Every fallible call returns a recast_status. On failure the message is
 * available from recast_last_error() on the same thread. Strings returned
 * through char** out-parameters are NUL-terminated UTF-8 owned by the caller
 * and must be released with recast_string_free(). Handles are released with
 * their matching *_free function; passing NULL to any *_free is a no-op.
 *
 * Stores and models are immutable once created and may be shared between
 * threads. A model keeps its store alive, so the store handle may be freed
 * first. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(RECAST_BUILDING_LIBRARY)
#define RECAST_API __declspec(dllexport)
#else
#define RECAST_API __declspec(dllimport)
#endif
#else
#define RECAST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum recast_status {
  RECAST_OK = 0,
  RECAST_ERR_INVALID_ARGUMENT = 1,
  RECAST_ERR_PARSE = 2,
  RECAST_ERR_IO = 3,
  RECAST_ERR_EMPTY_TEXT = 4,
  RECAST_ERR_NO_WORDS = 5,
  RECAST_ERR_TOO_LONG = 6,
  RECAST_ERR_BAD_WORD_INDEX = 7,
  RECAST_ERR_NOT_FOUND = 8,
  RECAST_ERR_BAD_MAGIC = 9,
  RECAST_ERR_VERSION_MISMATCH = 10,
  RECAST_ERR_DIMENSION_MISMATCH = 11,
  RECAST_ERR_TRUNCATED = 12,
  RECAST_ERR_TRAINING = 13,
  RECAST_ERR_STORAGE = 14,
  RECAST_ERR_INTERNAL = 15
} recast_status;

typedef struct recast_store recast_store;
typedef struct recast_model recast_model;
typedef struct recast_server recast_server;

RECAST_API const char* recast_version(void);

/* Snake-case name of a status, e.g. "empty_text". Never NULL. */
RECAST_API const char* recast_status_name(recast_status status);

/* Message of the last failed call on this thread, "" if none. Valid until
 * the next failing call on the same thread. */
RECAST_API const char* recast_last_error(void);

RECAST_API void recast_string_free(char* s);

/* ---- Embeddings ---- */

/* Word2vec text file, or binary when the path ends in ".bin". */
RECAST_API recast_status recast_store_load(const char* path,
                                           recast_store** out);
RECAST_API void recast_store_free(recast_store* store);
RECAST_API size_t recast_store_size(const recast_store* store);
RECAST_API size_t recast_store_dim(const recast_store* store);

/* JSON array [{"word", "similarity"}] of the k nearest words by cosine.
 * RECAST_ERR_NOT_FOUND when word is not in the vocabulary. */
RECAST_API recast_status recast_store_neighbors_json(const recast_store* store,
                                                     const char* word, size_t k,
                                                     char** out_json);

/* ---- Corpus and training ---- */

/* JSON Lines {"text", "label"}; n >= 2. */
RECAST_API recast_status recast_gen_corpus_jsonl(uint64_t seed, size_t n,
                                                 char** out_jsonl);

typedef struct recast_train_options {
  size_t model_dim;
  size_t num_heads;
  size_t ffn_dim;
  size_t max_len;
  uint64_t seed;
  size_t epochs;
  size_t batch_size;
  double learning_rate;
} recast_train_options;

RECAST_API void recast_train_options_init(recast_train_options* options);

/* Called once per epoch with whole-corpus loss and accuracy. */
typedef void (*recast_epoch_fn)(size_t epoch, double loss, double accuracy,
                                void* user_data);

/* corpus_jsonl holds len bytes of JSON Lines. on_epoch may be NULL. */
RECAST_API recast_status recast_train(const recast_store* store,
                                      const char* corpus_jsonl, size_t len,
                                      const recast_train_options* options,
                                      recast_epoch_fn on_epoch, void* user_data,
                                      recast_model** out);

/* ---- Models ---- */

RECAST_API recast_status recast_model_load(const char* path,
                                           const recast_store* store,
                                           recast_model** out);
RECAST_API recast_status recast_model_save(const recast_model* model,
                                           const char* path);
RECAST_API void recast_model_free(recast_model* model);

/* "rcst1-<hash>"; owned by the model. */
RECAST_API const char* recast_model_version(const recast_model* model);

/* Body of a successful POST /api/score. */
RECAST_API recast_status recast_score_json(const recast_model* model,
                                           const char* text, char** out_json);

/* Body of a successful POST /api/alternatives. */
RECAST_API recast_status recast_alternatives_json(const recast_model* model,
                                                  const char* text,
                                                  size_t word_index, size_t k,
                                                  char** out_json);

/* One report line per non-blank corpus line. Lines that cannot be audited
 * carry an "error" field instead of failing the call. */
RECAST_API recast_status recast_audit_jsonl(const recast_model* model,
                                            const char* corpus_jsonl,
                                            size_t len, char** out_jsonl);

/* ---- HTTP service ---- */

typedef struct recast_server_config {
  const char* address; /* "host:port"; port 0 picks a free port */
  const char* model_path;
  const char* embeddings_path;
  const char* flag_log_path;
  const char* static_dir; /* NULL or "" to serve only the API */
  size_t default_k;
  size_t max_text_bytes;
} recast_server_config;

RECAST_API void recast_server_config_init(recast_server_config* config);

/* Opens the flag log and binds the socket. Nothing is loaded yet. */
RECAST_API recast_status
recast_server_create(const recast_server_config* config, recast_server** out);

RECAST_API int recast_server_port(const recast_server* server);

/* Starts answering requests (503 while loading), loads the model and
 * embeddings, then serves until recast_server_stop(). Returns the load error
 * if loading fails. */
RECAST_API recast_status recast_server_run(recast_server* server);

/* Safe to call from any thread, including a signal-watching one. */
RECAST_API void recast_server_stop(recast_server* server);
RECAST_API void recast_server_free(recast_server* server);

#ifdef __cplusplus
}
#endif

#endif /* RECAST_RECAST_H_ */
