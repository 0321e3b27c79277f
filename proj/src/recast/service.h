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

#ifndef RECAST_SERVICE_H_
#define RECAST_SERVICE_H_

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "recast/embedding_store.h"
#include "recast/flag_log.h"
#include "recast/model.h"

namespace httplib {
class Server;
}

namespace recast {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::string model_path;
  std::string embeddings_path;
  std::string flag_log_path = "flags.jsonl";
  std::string static_dir;  // served at "/" when set
  std::size_t default_k = 5;
  std::size_t max_text_bytes = 8192;

  absl::Status Validate() const;
};

// Parses "host:port"; a bare port keeps the current host.
absl::Status ParseAddress(std::string_view address, ServiceConfig& config);

// Everything a request needs, shared read-only between handler threads.
struct Engine {
  Model model;
  std::shared_ptr<const EmbeddingStore> store;
  std::string model_version;
};

absl::StatusOr<std::shared_ptr<const Engine>> LoadEngine(
    const std::string& model_path, const std::string& embeddings_path);
std::shared_ptr<const Engine> MakeEngine(
    Model model, std::shared_ptr<const EmbeddingStore> store);

struct HttpReply {
  int status = 200;
  std::string body;  // JSON
};

// HTTP JSON API over the scoring, suggestion and flagging operations. The
// handlers are plain functions of the request body so they can be exercised
// without a socket; Bind() wires them to an HTTP server.
//
// Until SetEngine() is called every endpoint answers 503.
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Opens (creating if needed) the flag log.
  absl::Status Init();

  void SetEngine(std::shared_ptr<const Engine> engine);
  std::shared_ptr<const Engine> engine() const;

  HttpReply HandleScore(std::string_view body) const;
  HttpReply HandleAlternatives(std::string_view body) const;
  HttpReply HandleFlag(std::string_view body);
  HttpReply HandleHealth() const;

  // Binds the listening socket and returns the bound port.
  absl::StatusOr<int> Bind();
  // Serves until Stop(); call after Bind(). Returns at once if Stop() came
  // first.
  absl::Status Serve();
  // Callable from any thread, before or during Serve().
  void Stop();

  const ServiceConfig& config() const { return config_; }

 private:
  ServiceConfig config_;
  mutable std::mutex engine_mu_;
  std::shared_ptr<const Engine> engine_;
  std::unique_ptr<FlagLog> flag_log_;
  std::unique_ptr<httplib::Server> server_;
  std::mutex run_mu_;
  bool stop_requested_ = false;
  bool serving_ = false;
};

}  // namespace recast

#endif  // RECAST_SERVICE_H_
