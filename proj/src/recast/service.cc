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

#include "recast/service.h"

#include <charconv>
#include <variant>

#include "absl/strings/str_cat.h"
#include "httplib.h"
#include "recast/api_json.h"
#include "recast/counterfactual.h"
#include "recast/model_io.h"
#include "recast/status.h"

namespace recast {
namespace {

constexpr char kJsonContentType[] = "application/json; charset=utf-8";

HttpReply Error(int status, std::string_view code, std::string_view message) {
  return {status, DumpJson(ErrorJson(code, message))};
}

HttpReply BadJson(std::string_view message) {
  return Error(400, "bad_json", message);
}

HttpReply FromStatus(const absl::Status& status) {
  const ErrorKind kind = GetErrorKind(status);
  switch (kind) {
    case ErrorKind::kEmptyText:
    case ErrorKind::kNoWords:
    case ErrorKind::kTooLong:
    case ErrorKind::kBadWordIndex:
    case ErrorKind::kInvalidArgument:
      return Error(400, ErrorKindName(kind), std::string(status.message()));
    case ErrorKind::kStorage:
      return Error(500, "storage_error", std::string(status.message()));
    default:
      return Error(500, "internal", std::string(status.message()));
  }
}

HttpReply NotReady() {
  return Error(503, "not_ready", "model and embeddings are still loading");
}

// Parses the body and pulls out a text field that is within the size limit.
struct TextRequest {
  Json body;
  std::string text;
};

std::variant<TextRequest, HttpReply> ParseTextRequest(
    std::string_view body, std::size_t max_text_bytes) {
  TextRequest request;
  request.body = Json::parse(body, nullptr, false);
  if (request.body.is_discarded() || !request.body.is_object()) {
    return BadJson("request body must be a JSON object");
  }
  const auto text = request.body.find("text");
  if (text == request.body.end() || !text->is_string()) {
    return BadJson("\"text\" must be a string");
  }
  request.text = text->get<std::string>();
  if (request.text.size() > max_text_bytes) {
    return Error(400, "too_long",
                 absl::StrCat("text is ", request.text.size(),
                              " bytes; the limit is ", max_text_bytes));
  }
  return request;
}

}  // namespace

absl::Status ServiceConfig::Validate() const {
  if (default_k < 1) {
    return MakeError(ErrorKind::kInvalidArgument, "default_k must be >= 1");
  }
  if (max_text_bytes < 1) {
    return MakeError(ErrorKind::kInvalidArgument,
                     "max_text_bytes must be >= 1");
  }
  if (port < 0 || port > 65535) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("port ", port, " is out of range"));
  }
  return absl::OkStatus();
}

absl::Status ParseAddress(std::string_view address, ServiceConfig& config) {
  const std::size_t colon = address.rfind(':');
  std::string_view port_text = address;
  if (colon != std::string_view::npos) {
    if (colon > 0) config.host = std::string(address.substr(0, colon));
    port_text = address.substr(colon + 1);
  }
  int port = -1;
  auto [ptr, ec] = std::from_chars(port_text.data(),
                                   port_text.data() + port_text.size(), port);
  if (ec != std::errc() || ptr != port_text.data() + port_text.size() ||
      port < 0 || port > 65535) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("bad address '", std::string(address),
                                  "', expected host:port"));
  }
  config.port = port;
  return absl::OkStatus();
}

std::shared_ptr<const Engine> MakeEngine(
    Model model, std::shared_ptr<const EmbeddingStore> store) {
  auto engine = std::make_shared<Engine>(
      Engine{std::move(model), std::move(store), std::string()});
  engine->model_version = ModelVersion(engine->model);
  return engine;
}

absl::StatusOr<std::shared_ptr<const Engine>> LoadEngine(
    const std::string& model_path, const std::string& embeddings_path) {
  RECAST_ASSIGN_OR_RETURN(EmbeddingStore store,
                          LoadEmbeddings(embeddings_path));
  RECAST_ASSIGN_OR_RETURN(Model model, LoadModelFile(model_path, store));
  return MakeEngine(std::move(model),
                    std::make_shared<const EmbeddingStore>(std::move(store)));
}

Service::Service(ServiceConfig config) : config_(std::move(config)) {}

Service::~Service() { Stop(); }

absl::Status Service::Init() {
  RECAST_RETURN_IF_ERROR(config_.Validate());
  RECAST_ASSIGN_OR_RETURN(flag_log_, FlagLog::Open(config_.flag_log_path));
  return absl::OkStatus();
}

void Service::SetEngine(std::shared_ptr<const Engine> engine) {
  std::lock_guard<std::mutex> lock(engine_mu_);
  engine_ = std::move(engine);
}

std::shared_ptr<const Engine> Service::engine() const {
  std::lock_guard<std::mutex> lock(engine_mu_);
  return engine_;
}

HttpReply Service::HandleScore(std::string_view body) const {
  const auto engine = this->engine();
  if (!engine) return NotReady();
  auto parsed = ParseTextRequest(body, config_.max_text_bytes);
  if (auto* reply = std::get_if<HttpReply>(&parsed)) return *reply;
  const auto& request = std::get<TextRequest>(parsed);

  const auto result = Score(engine->model, *engine->store, request.text);
  if (!result.ok()) return FromStatus(result.status());
  return {200, DumpJson(ScoreResponseJson(*result, engine->model_version))};
}

HttpReply Service::HandleAlternatives(std::string_view body) const {
  const auto engine = this->engine();
  if (!engine) return NotReady();
  auto parsed = ParseTextRequest(body, config_.max_text_bytes);
  if (auto* reply = std::get_if<HttpReply>(&parsed)) return *reply;
  const auto& request = std::get<TextRequest>(parsed);

  const auto index = request.body.find("word_index");
  if (index == request.body.end() || !index->is_number_integer()) {
    return BadJson("\"word_index\" must be an integer");
  }
  if (index->get<std::int64_t>() < 0) {
    return Error(400, "bad_word_index", "word_index must be >= 0");
  }
  std::size_t k = config_.default_k;
  if (const auto k_field = request.body.find("k");
      k_field != request.body.end() && !k_field->is_null()) {
    if (!k_field->is_number_integer() || k_field->get<std::int64_t>() < 1) {
      return Error(400, "bad_k", "k must be an integer >= 1");
    }
    k = k_field->get<std::size_t>();
  }

  // Text problems take precedence over the index, matching /api/score.
  if (const auto scored = Score(engine->model, *engine->store, request.text);
      !scored.ok()) {
    return FromStatus(scored.status());
  }
  const auto candidates = Suggest(engine->model, *engine->store, request.text,
                                  index->get<std::size_t>(), k);
  if (!candidates.ok()) return FromStatus(candidates.status());
  return {200, DumpJson(AlternativesResponseJson(*candidates))};
}

HttpReply Service::HandleFlag(std::string_view body) {
  const auto engine = this->engine();
  if (!engine) return NotReady();
  auto parsed = ParseTextRequest(body, config_.max_text_bytes);
  if (auto* reply = std::get_if<HttpReply>(&parsed)) return *reply;
  const auto& request = std::get<TextRequest>(parsed);

  if (Tokenize(request.text).empty()) {
    return Error(400, "empty_text", "text is empty");
  }
  FlagInput input;
  input.text = request.text;
  const auto score = request.body.find("model_score");
  if (score == request.body.end() || !score->is_number_integer() ||
      score->get<std::int64_t>() < 0 || score->get<std::int64_t>() > 100) {
    return Error(400, "bad_score", "model_score must be an integer in 0..100");
  }
  input.model_score = score->get<int>();
  const auto verdict = request.body.find("verdict");
  if (verdict == request.body.end() || !verdict->is_string() ||
      !IsValidVerdict(verdict->get<std::string>())) {
    return Error(400, "bad_verdict",
                 "verdict must be \"false_positive\" or \"false_negative\"");
  }
  input.verdict = verdict->get<std::string>();
  if (const auto comment = request.body.find("comment");
      comment != request.body.end() && !comment->is_null()) {
    if (!comment->is_string()) return BadJson("\"comment\" must be a string");
    input.comment = comment->get<std::string>();
  }
  if (!flag_log_) {
    return Error(500, "storage_error", "flag log is not open");
  }
  const auto record = flag_log_->Append(input, engine->model_version);
  if (!record.ok()) return FromStatus(record.status());
  Json out;
  out["ok"] = true;
  out["id"] = record->id;
  return {200, DumpJson(out)};
}

HttpReply Service::HandleHealth() const {
  const auto engine = this->engine();
  Json out;
  if (!engine) {
    out["status"] = "loading";
    return {503, DumpJson(out)};
  }
  out["status"] = "ok";
  out["model_version"] = engine->model_version;
  out["vocab_size"] = engine->store->size();
  return {200, DumpJson(out)};
}

absl::StatusOr<int> Service::Bind() {
  server_ = std::make_unique<httplib::Server>();
  server_->set_payload_max_length(
      std::max<std::size_t>(1 << 20, 4 * config_.max_text_bytes));

  auto reply = [](httplib::Response& res, const HttpReply& out) {
    res.status = out.status;
    res.set_content(out.body, kJsonContentType);
  };
  server_->Post("/api/score", [this, reply](const httplib::Request& req,
                                            httplib::Response& res) {
    reply(res, HandleScore(req.body));
  });
  server_->Post("/api/alternatives", [this, reply](const httplib::Request& req,
                                                   httplib::Response& res) {
    reply(res, HandleAlternatives(req.body));
  });
  server_->Post("/api/flag", [this, reply](const httplib::Request& req,
                                           httplib::Response& res) {
    reply(res, HandleFlag(req.body));
  });
  server_->Get("/api/health",
               [this, reply](const httplib::Request&, httplib::Response& res) {
                 reply(res, HandleHealth());
               });
  if (!config_.static_dir.empty() &&
      !server_->set_mount_point("/", config_.static_dir)) {
    return MakeError(ErrorKind::kIo,
                     absl::StrCat("static directory ", config_.static_dir,
                                  " does not exist"));
  }

  int port = config_.port;
  if (port == 0) {
    port = server_->bind_to_any_port(config_.host);
    if (port < 0) port = -1;
  } else if (!server_->bind_to_port(config_.host, port)) {
    port = -1;
  }
  if (port < 0) {
    return MakeError(ErrorKind::kIo, absl::StrCat("cannot bind ", config_.host,
                                                  ":", config_.port));
  }
  return port;
}

absl::Status Service::Serve() {
  if (!server_) {
    return MakeError(ErrorKind::kInvalidArgument, "Serve() before Bind()");
  }
  {
    std::lock_guard<std::mutex> lock(run_mu_);
    if (stop_requested_) return absl::OkStatus();
    serving_ = true;
  }
  if (!server_->listen_after_bind()) {
    return MakeError(ErrorKind::kIo, "HTTP server stopped with an error");
  }
  return absl::OkStatus();
}

void Service::Stop() {
  {
    std::lock_guard<std::mutex> lock(run_mu_);
    stop_requested_ = true;
    if (!serving_) return;
  }
  server_->wait_until_ready();
  server_->stop();
}

}  // namespace recast
