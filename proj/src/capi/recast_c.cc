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

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <string>
#include <thread>

#include "recast/api_json.h"
#include "recast/audit.h"
#include "recast/corpus.h"
#include "recast/counterfactual.h"
#include "recast/embedding_store.h"
#include "recast/model_io.h"
#include "recast/recast.h"
#include "recast/service.h"
#include "recast/status.h"
#include "recast/train.h"

struct recast_store {
  std::shared_ptr<const recast::EmbeddingStore> store;
};

struct recast_model {
  std::shared_ptr<const recast::Engine> engine;
};

struct recast_server {
  std::unique_ptr<recast::Service> service;
  int port = 0;
};

namespace {

thread_local std::string last_error;

recast_status FromKind(recast::ErrorKind kind) {
  using recast::ErrorKind;
  switch (kind) {
    case ErrorKind::kInvalidArgument:
      return RECAST_ERR_INVALID_ARGUMENT;
    case ErrorKind::kParse:
      return RECAST_ERR_PARSE;
    case ErrorKind::kIo:
      return RECAST_ERR_IO;
    case ErrorKind::kEmptyText:
      return RECAST_ERR_EMPTY_TEXT;
    case ErrorKind::kNoWords:
      return RECAST_ERR_NO_WORDS;
    case ErrorKind::kTooLong:
      return RECAST_ERR_TOO_LONG;
    case ErrorKind::kBadWordIndex:
      return RECAST_ERR_BAD_WORD_INDEX;
    case ErrorKind::kNotFound:
      return RECAST_ERR_NOT_FOUND;
    case ErrorKind::kBadMagic:
      return RECAST_ERR_BAD_MAGIC;
    case ErrorKind::kVersionMismatch:
      return RECAST_ERR_VERSION_MISMATCH;
    case ErrorKind::kDimensionMismatch:
      return RECAST_ERR_DIMENSION_MISMATCH;
    case ErrorKind::kTruncated:
      return RECAST_ERR_TRUNCATED;
    case ErrorKind::kTraining:
      return RECAST_ERR_TRAINING;
    case ErrorKind::kStorage:
      return RECAST_ERR_STORAGE;
    case ErrorKind::kUnknown:
      break;
  }
  return RECAST_ERR_INTERNAL;
}

recast_status Fail(recast_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

recast_status Fail(const absl::Status& status) {
  return Fail(FromKind(recast::GetErrorKind(status)),
              std::string(status.message()));
}

recast_status NullArgument(const char* name) {
  return Fail(RECAST_ERR_INVALID_ARGUMENT,
              std::string(name) + " must not be NULL");
}

recast_status Emit(const std::string& value, char** out) {
  char* copy = static_cast<char*>(std::malloc(value.size() + 1));
  if (copy == nullptr) return Fail(RECAST_ERR_INTERNAL, "out of memory");
  std::memcpy(copy, value.data(), value.size());
  copy[value.size()] = '\0';
  *out = copy;
  return RECAST_OK;
}

// Runs body, turning escaped C++ exceptions into RECAST_ERR_INTERNAL so they
// never cross the C boundary.
template <typename F>
recast_status Guard(F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return Fail(RECAST_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(RECAST_ERR_INTERNAL, "unknown exception");
  }
}

std::string OrEmpty(const char* s) { return s == nullptr ? "" : s; }

}  // namespace

extern "C" {

const char* recast_version(void) { return "0.1.0"; }

const char* recast_status_name(recast_status status) {
  switch (status) {
    case RECAST_OK:
      return "ok";
    case RECAST_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case RECAST_ERR_PARSE:
      return "parse";
    case RECAST_ERR_IO:
      return "io";
    case RECAST_ERR_EMPTY_TEXT:
      return "empty_text";
    case RECAST_ERR_NO_WORDS:
      return "no_words";
    case RECAST_ERR_TOO_LONG:
      return "too_long";
    case RECAST_ERR_BAD_WORD_INDEX:
      return "bad_word_index";
    case RECAST_ERR_NOT_FOUND:
      return "not_found";
    case RECAST_ERR_BAD_MAGIC:
      return "bad_magic";
    case RECAST_ERR_VERSION_MISMATCH:
      return "version_mismatch";
    case RECAST_ERR_DIMENSION_MISMATCH:
      return "dimension_mismatch";
    case RECAST_ERR_TRUNCATED:
      return "truncated";
    case RECAST_ERR_TRAINING:
      return "training";
    case RECAST_ERR_STORAGE:
      return "storage";
    case RECAST_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* recast_last_error(void) { return last_error.c_str(); }

void recast_string_free(char* s) { std::free(s); }

recast_status recast_store_load(const char* path, recast_store** out) {
  if (path == nullptr) return NullArgument("path");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    auto store = recast::LoadEmbeddings(path);
    if (!store.ok()) return Fail(store.status());
    *out = new recast_store{
        std::make_shared<const recast::EmbeddingStore>(*std::move(store))};
    return RECAST_OK;
  });
}

void recast_store_free(recast_store* store) { delete store; }

size_t recast_store_size(const recast_store* store) {
  return store == nullptr ? 0 : store->store->size();
}

size_t recast_store_dim(const recast_store* store) {
  return store == nullptr ? 0 : store->store->dim();
}

recast_status recast_store_neighbors_json(const recast_store* store,
                                          const char* word, size_t k,
                                          char** out_json) {
  if (store == nullptr) return NullArgument("store");
  if (word == nullptr) return NullArgument("word");
  if (out_json == nullptr) return NullArgument("out_json");
  return Guard([&] {
    auto neighbors = store->store->Nearest(word, k);
    if (!neighbors.ok()) return Fail(neighbors.status());
    return Emit(recast::DumpJson(recast::NeighborsJson(*neighbors)), out_json);
  });
}

recast_status recast_gen_corpus_jsonl(uint64_t seed, size_t n,
                                      char** out_jsonl) {
  if (out_jsonl == nullptr) return NullArgument("out_jsonl");
  return Guard([&] {
    auto corpus = recast::GenerateCorpus(seed, n);
    if (!corpus.ok()) return Fail(corpus.status());
    return Emit(recast::SerializeCorpusJsonl(*corpus), out_jsonl);
  });
}

void recast_train_options_init(recast_train_options* options) {
  if (options == nullptr) return;
  const recast::ModelConfig config;
  const recast::TrainOptions train;
  options->model_dim = config.model_dim;
  options->num_heads = config.num_heads;
  options->ffn_dim = config.ffn_dim;
  options->max_len = config.max_len;
  options->seed = config.seed;
  options->epochs = train.epochs;
  options->batch_size = train.batch_size;
  options->learning_rate = train.learning_rate;
}

recast_status recast_train(const recast_store* store, const char* corpus_jsonl,
                           size_t len, const recast_train_options* options,
                           recast_epoch_fn on_epoch, void* user_data,
                           recast_model** out) {
  if (store == nullptr) return NullArgument("store");
  if (corpus_jsonl == nullptr && len > 0) return NullArgument("corpus_jsonl");
  if (options == nullptr) return NullArgument("options");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    auto corpus = recast::ParseCorpusJsonl(std::string_view(corpus_jsonl, len));
    if (!corpus.ok()) return Fail(corpus.status());

    recast::ModelConfig config;
    config.model_dim = options->model_dim;
    config.num_heads = options->num_heads;
    config.ffn_dim = options->ffn_dim;
    config.max_len = options->max_len;
    config.seed = options->seed;
    recast::TrainOptions train;
    train.epochs = options->epochs;
    train.batch_size = options->batch_size;
    train.learning_rate = options->learning_rate;

    auto result = recast::Train(config, *store->store, *corpus, train,
                                [&](const recast::EpochStats& stats) {
                                  if (on_epoch)
                                    on_epoch(stats.epoch, stats.loss,
                                             stats.accuracy, user_data);
                                });
    if (!result.ok()) return Fail(result.status());
    *out = new recast_model{
        recast::MakeEngine(std::move(result->model), store->store)};
    return RECAST_OK;
  });
}

recast_status recast_model_load(const char* path, const recast_store* store,
                                recast_model** out) {
  if (path == nullptr) return NullArgument("path");
  if (store == nullptr) return NullArgument("store");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    auto model = recast::LoadModelFile(path, *store->store);
    if (!model.ok()) return Fail(model.status());
    *out =
        new recast_model{recast::MakeEngine(*std::move(model), store->store)};
    return RECAST_OK;
  });
}

recast_status recast_model_save(const recast_model* model, const char* path) {
  if (model == nullptr) return NullArgument("model");
  if (path == nullptr) return NullArgument("path");
  return Guard([&] {
    const absl::Status status =
        recast::SaveModelFile(model->engine->model, path);
    return status.ok() ? RECAST_OK : Fail(status);
  });
}

void recast_model_free(recast_model* model) { delete model; }

const char* recast_model_version(const recast_model* model) {
  return model == nullptr ? "" : model->engine->model_version.c_str();
}

recast_status recast_score_json(const recast_model* model, const char* text,
                                char** out_json) {
  if (model == nullptr) return NullArgument("model");
  if (text == nullptr) return NullArgument("text");
  if (out_json == nullptr) return NullArgument("out_json");
  return Guard([&] {
    const recast::Engine& engine = *model->engine;
    auto result = recast::Score(engine.model, *engine.store, text);
    if (!result.ok()) return Fail(result.status());
    return Emit(recast::DumpJson(
                    recast::ScoreResponseJson(*result, engine.model_version)),
                out_json);
  });
}

recast_status recast_alternatives_json(const recast_model* model,
                                       const char* text, size_t word_index,
                                       size_t k, char** out_json) {
  if (model == nullptr) return NullArgument("model");
  if (text == nullptr) return NullArgument("text");
  if (out_json == nullptr) return NullArgument("out_json");
  return Guard([&] {
    const recast::Engine& engine = *model->engine;
    auto candidates =
        recast::Suggest(engine.model, *engine.store, text, word_index, k);
    if (!candidates.ok()) return Fail(candidates.status());
    return Emit(recast::DumpJson(recast::AlternativesResponseJson(*candidates)),
                out_json);
  });
}

recast_status recast_audit_jsonl(const recast_model* model,
                                 const char* corpus_jsonl, size_t len,
                                 char** out_jsonl) {
  if (model == nullptr) return NullArgument("model");
  if (corpus_jsonl == nullptr && len > 0) return NullArgument("corpus_jsonl");
  if (out_jsonl == nullptr) return NullArgument("out_jsonl");
  return Guard([&] {
    const recast::Engine& engine = *model->engine;
    std::string report;
    for (const auto& row :
         recast::AuditCorpus(engine.model, *engine.store,
                             std::string_view(corpus_jsonl, len))) {
      report += recast::DumpJson(recast::AuditRowJson(row));
      report.push_back('\n');
    }
    return Emit(report, out_jsonl);
  });
}

void recast_server_config_init(recast_server_config* config) {
  if (config == nullptr) return;
  static const recast::ServiceConfig defaults;
  static const std::string address =
      defaults.host + ":" + std::to_string(defaults.port);
  config->address = address.c_str();
  config->model_path = nullptr;
  config->embeddings_path = nullptr;
  config->flag_log_path = defaults.flag_log_path.c_str();
  config->static_dir = nullptr;
  config->default_k = defaults.default_k;
  config->max_text_bytes = defaults.max_text_bytes;
}

recast_status recast_server_create(const recast_server_config* config,
                                   recast_server** out) {
  if (config == nullptr) return NullArgument("config");
  if (out == nullptr) return NullArgument("out");
  return Guard([&] {
    recast::ServiceConfig service_config;
    if (config->address != nullptr) {
      const absl::Status status =
          recast::ParseAddress(config->address, service_config);
      if (!status.ok()) return Fail(status);
    }
    service_config.model_path = OrEmpty(config->model_path);
    service_config.embeddings_path = OrEmpty(config->embeddings_path);
    if (service_config.model_path.empty() ||
        service_config.embeddings_path.empty()) {
      return Fail(RECAST_ERR_INVALID_ARGUMENT,
                  "model_path and embeddings_path are required");
    }
    if (config->flag_log_path != nullptr) {
      service_config.flag_log_path = config->flag_log_path;
    }
    service_config.static_dir = OrEmpty(config->static_dir);
    service_config.default_k = config->default_k;
    service_config.max_text_bytes = config->max_text_bytes;

    auto server = std::make_unique<recast_server>();
    server->service = std::make_unique<recast::Service>(service_config);
    if (const absl::Status status = server->service->Init(); !status.ok()) {
      return Fail(status);
    }
    auto port = server->service->Bind();
    if (!port.ok()) return Fail(port.status());
    server->port = *port;
    *out = server.release();
    return RECAST_OK;
  });
}

int recast_server_port(const recast_server* server) {
  return server == nullptr ? -1 : server->port;
}

recast_status recast_server_run(recast_server* server) {
  if (server == nullptr) return NullArgument("server");
  return Guard([&] {
    recast::Service& service = *server->service;
    absl::Status serve_status;
    std::thread serving([&] { serve_status = service.Serve(); });

    auto engine = recast::LoadEngine(service.config().model_path,
                                     service.config().embeddings_path);
    if (!engine.ok()) {
      service.Stop();
      serving.join();
      return Fail(engine.status());
    }
    service.SetEngine(*std::move(engine));
    serving.join();
    return serve_status.ok() ? RECAST_OK : Fail(serve_status);
  });
}

void recast_server_stop(recast_server* server) {
  if (server != nullptr) server->service->Stop();
}

void recast_server_free(recast_server* server) { delete server; }

}  // extern "C"
