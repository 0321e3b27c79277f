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

// recast: corpus generation, training, scoring, audits, neighbor queries and
// the HTTP service, on top of the C API.
//
// Exit codes: 0 success, 1 usage error, 2 bad input data, 3 runtime failure.

#include <pthread.h>
#include <signal.h>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "recast/recast.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

int ExitCodeFor(recast_status status) {
  switch (status) {
    case RECAST_OK:
      return kExitOk;
    case RECAST_ERR_IO:
    case RECAST_ERR_TRAINING:
    case RECAST_ERR_STORAGE:
    case RECAST_ERR_INTERNAL:
      return kExitRuntime;
    default:
      return kExitData;
  }
}

int Report(recast_status status) {
  std::cerr << "recast: " << recast_status_name(status) << ": "
            << recast_last_error() << "\n";
  return ExitCodeFor(status);
}

struct StringDeleter {
  void operator()(char* s) const { recast_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct StoreDeleter {
  void operator()(recast_store* s) const { recast_store_free(s); }
};
using Store = std::unique_ptr<recast_store, StoreDeleter>;

struct ModelDeleter {
  void operator()(recast_model* m) const { recast_model_free(m); }
};
using Model = std::unique_ptr<recast_model, ModelDeleter>;

struct ServerDeleter {
  void operator()(recast_server* s) const { recast_server_free(s); }
};

bool ReadFile(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  out.assign(std::istreambuf_iterator<char>(in), {});
  return !in.bad();
}

bool WriteFile(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << data;
  out.close();
  return static_cast<bool>(out);
}

int IoError(const std::string& what, const std::string& path) {
  std::cerr << "recast: io: " << what << " " << path << "\n";
  return kExitRuntime;
}

recast_status LoadModel(const std::string& model_path,
                        const std::string& embeddings_path, Model& model) {
  recast_store* raw_store = nullptr;
  if (const auto status =
          recast_store_load(embeddings_path.c_str(), &raw_store);
      status != RECAST_OK) {
    return status;
  }
  const Store store(raw_store);
  recast_model* raw_model = nullptr;
  const auto status =
      recast_model_load(model_path.c_str(), store.get(), &raw_model);
  model.reset(raw_model);
  return status;
}

// ---- gen-corpus ----

struct GenCorpusArgs {
  std::uint64_t seed = 7;
  std::size_t n = 2000;
  std::string out;
};

int RunGenCorpus(const GenCorpusArgs& args) {
  char* raw = nullptr;
  if (const auto status = recast_gen_corpus_jsonl(args.seed, args.n, &raw);
      status != RECAST_OK) {
    return Report(status);
  }
  const OwnedString corpus(raw);
  if (!WriteFile(args.out, corpus.get()))
    return IoError("cannot write", args.out);

  std::size_t toxic = 0;
  std::size_t total = 0;
  std::istringstream lines(corpus.get());
  for (std::string line; std::getline(lines, line);) {
    ++total;
    if (nlohmann::json::parse(line).at("label") == 1) ++toxic;
  }
  std::cout << "wrote " << total << " examples (" << toxic << " toxic, "
            << total - toxic << " non-toxic) to " << args.out << "\n";
  return kExitOk;
}

// ---- train ----

struct TrainArgs {
  std::string corpus;
  std::string embeddings;
  std::string out;
  recast_train_options options{};
};

void PrintEpoch(size_t epoch, double loss, double accuracy, void* user_data) {
  const auto* options = static_cast<const recast_train_options*>(user_data);
  std::printf("epoch %zu/%zu  loss %.6f  accuracy %.4f\n", epoch,
              options->epochs, loss, accuracy);
  std::fflush(stdout);
}

int RunTrain(TrainArgs args) {
  std::string corpus;
  if (!ReadFile(args.corpus, corpus))
    return IoError("cannot read", args.corpus);
  recast_store* raw_store = nullptr;
  if (const auto status =
          recast_store_load(args.embeddings.c_str(), &raw_store);
      status != RECAST_OK) {
    return Report(status);
  }
  const Store store(raw_store);
  recast_model* raw_model = nullptr;
  if (const auto status =
          recast_train(store.get(), corpus.data(), corpus.size(), &args.options,
                       PrintEpoch, &args.options, &raw_model);
      status != RECAST_OK) {
    return Report(status);
  }
  const Model model(raw_model);
  if (const auto status = recast_model_save(model.get(), args.out.c_str());
      status != RECAST_OK) {
    return Report(status);
  }
  std::cout << "saved " << recast_model_version(model.get()) << " to "
            << args.out << "\n";
  return kExitOk;
}

// ---- score ----

struct ScoreArgs {
  std::string model;
  std::string embeddings;
  std::string text;
  bool json = false;
};

int RunScore(const ScoreArgs& args) {
  Model model;
  if (const auto status = LoadModel(args.model, args.embeddings, model);
      status != RECAST_OK) {
    return Report(status);
  }
  char* raw = nullptr;
  if (const auto status =
          recast_score_json(model.get(), args.text.c_str(), &raw);
      status != RECAST_OK) {
    return Report(status);
  }
  const OwnedString body(raw);
  if (args.json) {
    std::cout << body.get() << "\n";
    return kExitOk;
  }
  const auto result = nlohmann::json::parse(body.get());
  std::cout << "score " << result["score"].get<int>() << "/100  (probability "
            << result["probability"].get<double>() << ")\n";
  std::size_t width = 0;
  for (const auto& word : result["words"]) {
    width = std::max(width, word["text"].get<std::string>().size());
  }
  constexpr int kBarWidth = 40;
  for (const auto& word : result["words"]) {
    const std::string text = word["text"];
    const double attention = word["attention"];
    const int bar = static_cast<int>(attention * kBarWidth + 0.5);
    std::printf("  %-*s %s%*s %.4f\n", static_cast<int>(width), text.c_str(),
                std::string(bar, '#').c_str(), kBarWidth - bar, "", attention);
  }
  return kExitOk;
}

// ---- audit ----

struct AuditArgs {
  std::string model;
  std::string embeddings;
  std::string corpus;
  std::string out;
};

int RunAudit(const AuditArgs& args) {
  std::string corpus;
  if (!ReadFile(args.corpus, corpus))
    return IoError("cannot read", args.corpus);
  Model model;
  if (const auto status = LoadModel(args.model, args.embeddings, model);
      status != RECAST_OK) {
    return Report(status);
  }
  char* raw = nullptr;
  if (const auto status =
          recast_audit_jsonl(model.get(), corpus.data(), corpus.size(), &raw);
      status != RECAST_OK) {
    return Report(status);
  }
  const OwnedString report(raw);
  if (!WriteFile(args.out, report.get()))
    return IoError("cannot write", args.out);

  std::size_t rows = 0;
  std::size_t errors = 0;
  std::istringstream lines(report.get());
  for (std::string line; std::getline(lines, line);) {
    ++rows;
    if (nlohmann::json::parse(line).contains("error")) ++errors;
  }
  std::cout << "audited " << rows << " rows (" << errors << " with errors) to "
            << args.out << "\n";
  return kExitOk;
}

// ---- neighbors ----

struct NeighborsArgs {
  std::string embeddings;
  std::string word;
  std::size_t k = 10;
  bool json = false;
};

int RunNeighbors(const NeighborsArgs& args) {
  recast_store* raw_store = nullptr;
  if (const auto status =
          recast_store_load(args.embeddings.c_str(), &raw_store);
      status != RECAST_OK) {
    return Report(status);
  }
  const Store store(raw_store);
  char* raw = nullptr;
  if (const auto status = recast_store_neighbors_json(
          store.get(), args.word.c_str(), args.k, &raw);
      status != RECAST_OK) {
    return Report(status);
  }
  const OwnedString body(raw);
  if (args.json) {
    std::cout << body.get() << "\n";
    return kExitOk;
  }
  for (const auto& neighbor : nlohmann::json::parse(body.get())) {
    std::printf("%s\t%.6f\n", neighbor["word"].get<std::string>().c_str(),
                neighbor["similarity"].get<double>());
  }
  return kExitOk;
}

// ---- serve ----

struct ServeArgs {
  std::string address;
  std::string model;
  std::string embeddings;
  std::string flag_log;
  std::string static_dir;
  std::size_t default_k = 5;
  std::size_t max_text_bytes = 8192;
};

int RunServe(const ServeArgs& args) {
  recast_server_config config;
  recast_server_config_init(&config);
  config.address = args.address.c_str();
  config.model_path = args.model.c_str();
  config.embeddings_path = args.embeddings.c_str();
  config.flag_log_path = args.flag_log.c_str();
  config.static_dir = args.static_dir.c_str();
  config.default_k = args.default_k;
  config.max_text_bytes = args.max_text_bytes;

  // Route SIGINT/SIGTERM to a watcher thread that stops the server.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  recast_server* raw = nullptr;
  if (const auto status = recast_server_create(&config, &raw);
      status != RECAST_OK) {
    return Report(status);
  }
  const std::unique_ptr<recast_server, ServerDeleter> server(raw);
  std::cerr << "recast: listening on port " << recast_server_port(server.get())
            << "\n";

  std::thread watcher([&] {
    int signal = 0;
    sigwait(&signals, &signal);
    recast_server_stop(server.get());
  });
  const recast_status status = recast_server_run(server.get());
  pthread_kill(watcher.native_handle(), SIGTERM);
  watcher.join();
  return status == RECAST_OK ? kExitOk : Report(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RECAST toxicity scoring, explanation and counterfactual audit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", recast_version());

  GenCorpusArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-corpus", "Write a synthetic corpus");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--n", gen.n, "Number of examples (>= 2)");
  gen_cmd->add_option("--out", gen.out, "Output JSON Lines path")->required();

  TrainArgs train;
  recast_train_options_init(&train.options);
  auto* train_cmd = app.add_subcommand("train", "Train a classifier");
  train_cmd->add_option("--corpus", train.corpus, "JSON Lines corpus")
      ->required();
  train_cmd->add_option("--embeddings", train.embeddings, "Word2vec file")
      ->required();
  train_cmd->add_option("--out", train.out, "Model output path")->required();
  train_cmd->add_option("--seed", train.options.seed, "Init and shuffle seed")
      ->required();
  train_cmd->add_option("--epochs", train.options.epochs, "Training epochs")
      ->capture_default_str();
  train_cmd->add_option("--batch", train.options.batch_size, "Mini-batch size")
      ->capture_default_str();
  train_cmd->add_option("--lr", train.options.learning_rate, "Learning rate")
      ->capture_default_str();
  train_cmd->add_option("--model-dim", train.options.model_dim)
      ->capture_default_str();
  train_cmd->add_option("--heads", train.options.num_heads)
      ->capture_default_str();
  train_cmd->add_option("--ffn-dim", train.options.ffn_dim)
      ->capture_default_str();
  train_cmd
      ->add_option("--max-len", train.options.max_len,
                   "Words per input; later words are ignored")
      ->capture_default_str();

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Score one text");
  score_cmd->add_option("--model", score.model)->required();
  score_cmd->add_option("--embeddings", score.embeddings)->required();
  score_cmd->add_option("--text", score.text)->required();
  score_cmd->add_flag("--json", score.json, "Print the /api/score body");

  AuditArgs audit;
  auto* audit_cmd = app.add_subcommand("audit", "Audit a corpus in batch");
  audit_cmd->add_option("--model", audit.model)->required();
  audit_cmd->add_option("--embeddings", audit.embeddings)->required();
  audit_cmd->add_option("--corpus", audit.corpus, "JSON Lines with \"text\"")
      ->required();
  audit_cmd->add_option("--out", audit.out, "JSON Lines report")->required();

  NeighborsArgs neighbors;
  auto* neighbors_cmd =
      app.add_subcommand("neighbors", "Nearest words by cosine similarity");
  neighbors_cmd->add_option("--embeddings", neighbors.embeddings)->required();
  neighbors_cmd->add_option("--word", neighbors.word)->required();
  neighbors_cmd->add_option("--k", neighbors.k)->capture_default_str();
  neighbors_cmd->add_flag("--json", neighbors.json);

  ServeArgs serve;
  serve.address = "127.0.0.1:8080";
  serve.flag_log = "flags.jsonl";
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--addr", serve.address, "host:port")
      ->envname("RECAST_ADDR")
      ->capture_default_str();
  serve_cmd->add_option("--model", serve.model)
      ->envname("RECAST_MODEL")
      ->required();
  serve_cmd->add_option("--embeddings", serve.embeddings)
      ->envname("RECAST_EMBEDDINGS")
      ->required();
  serve_cmd->add_option("--flag-log", serve.flag_log)
      ->envname("RECAST_FLAG_LOG")
      ->capture_default_str();
  serve_cmd->add_option("--static-dir", serve.static_dir,
                        "Directory served at /");
  serve_cmd->add_option("--default-k", serve.default_k)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  serve_cmd->add_option("--max-text-bytes", serve.max_text_bytes)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (gen_cmd->parsed()) return RunGenCorpus(gen);
  if (train_cmd->parsed()) return RunTrain(train);
  if (score_cmd->parsed()) return RunScore(score);
  if (audit_cmd->parsed()) return RunAudit(audit);
  if (neighbors_cmd->parsed()) return RunNeighbors(neighbors);
  if (serve_cmd->parsed()) return RunServe(serve);
  return kExitUsage;
}
