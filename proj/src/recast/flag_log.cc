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

#include "recast/flag_log.h"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "recast/api_json.h"
#include "recast/status.h"

namespace recast {
namespace {

std::string UtcTimestamp() {
  const auto now = std::chrono::system_clock::now();
  const auto millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                          now.time_since_epoch())
                          .count();
  const std::time_t seconds = static_cast<std::time_t>(millis / 1000);
  std::tm utc{};
  gmtime_r(&seconds, &utc);
  return absl::StrFormat("%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                         utc.tm_year + 1900, utc.tm_mon + 1, utc.tm_mday,
                         utc.tm_hour, utc.tm_min, utc.tm_sec,
                         static_cast<int>(millis % 1000));
}

bool IsTimestamp(std::string_view s) {
  // YYYY-MM-DDTHH:MM:SS.mmmZ
  static constexpr std::string_view kShape = "dddd-dd-ddTdd:dd:dd.dddZ";
  if (s.size() != kShape.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (kShape[i] == 'd') {
      if (s[i] < '0' || s[i] > '9') return false;
    } else if (s[i] != kShape[i]) {
      return false;
    }
  }
  const int month = (s[5] - '0') * 10 + (s[6] - '0');
  const int day = (s[8] - '0') * 10 + (s[9] - '0');
  const int hour = (s[11] - '0') * 10 + (s[12] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31 && hour <= 23;
}

absl::Status Errno(std::string_view what, const std::string& path) {
  return MakeError(
      ErrorKind::kStorage,
      absl::StrCat(std::string(what), " ", path, ": ", std::strerror(errno)));
}

}  // namespace

bool IsValidVerdict(std::string_view verdict) {
  return verdict == "false_positive" || verdict == "false_negative";
}

std::string SerializeFlagRecord(const FlagRecord& record) {
  Json row;
  row["id"] = record.id;
  row["timestamp"] = record.timestamp;
  row["text"] = record.text;
  row["model_score"] = record.model_score;
  row["verdict"] = record.verdict;
  row["comment"] = record.comment ? Json(*record.comment) : Json(nullptr);
  row["model_version"] = record.model_version;
  return DumpJson(row);
}

absl::StatusOr<FlagRecord> ParseFlagRecord(std::string_view line) {
  const Json row = Json::parse(line, nullptr, false);
  if (row.is_discarded() || !row.is_object()) {
    return MakeError(ErrorKind::kParse, "flag record is not a JSON object");
  }
  auto string_field = [&row](const char* name) -> std::optional<std::string> {
    const auto it = row.find(name);
    if (it == row.end() || !it->is_string()) return std::nullopt;
    return it->get<std::string>();
  };
  FlagRecord record;
  const auto id = string_field("id");
  const auto timestamp = string_field("timestamp");
  const auto text = string_field("text");
  const auto verdict = string_field("verdict");
  const auto version = string_field("model_version");
  const auto score = row.find("model_score");
  const auto comment = row.find("comment");
  if (!id || id->empty() || !timestamp || !text || !verdict || !version ||
      score == row.end() || !score->is_number_integer() ||
      comment == row.end() || !(comment->is_null() || comment->is_string())) {
    return MakeError(ErrorKind::kParse, "flag record is missing fields");
  }
  if (!IsTimestamp(*timestamp)) {
    return MakeError(ErrorKind::kParse, "flag record has a bad timestamp");
  }
  if (!IsValidVerdict(*verdict)) {
    return MakeError(ErrorKind::kParse, "flag record has a bad verdict");
  }
  const int model_score = score->get<int>();
  if (model_score < 0 || model_score > 100) {
    return MakeError(ErrorKind::kParse, "flag record score out of range");
  }
  record.id = *id;
  record.timestamp = *timestamp;
  record.text = *text;
  record.model_score = model_score;
  record.verdict = *verdict;
  if (comment->is_string()) record.comment = comment->get<std::string>();
  record.model_version = *version;
  return record;
}

FlagLog::FlagLog(std::string path, int fd)
    : path_(std::move(path)), fd_(fd), rng_(std::random_device{}()) {
  rng_.discard(static_cast<unsigned long long>(::getpid()) % 97);
}

FlagLog::~FlagLog() {
  if (fd_ >= 0) ::close(fd_);
}

absl::StatusOr<std::unique_ptr<FlagLog>> FlagLog::Open(
    const std::string& path) {
  const int fd =
      ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) return Errno("cannot open flag log", path);
  return std::unique_ptr<FlagLog>(new FlagLog(path, fd));
}

std::string FlagLog::NewId() {
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  const auto millis =
      std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  return absl::StrFormat("%012x%016x", static_cast<std::uint64_t>(millis),
                         rng_());
}

absl::StatusOr<FlagRecord> FlagLog::Append(const FlagInput& input,
                                           const std::string& model_version) {
  std::lock_guard<std::mutex> lock(mu_);
  FlagRecord record;
  record.id = NewId();
  record.timestamp = UtcTimestamp();
  record.text = input.text;
  record.model_score = input.model_score;
  record.verdict = input.verdict;
  record.comment = input.comment;
  record.model_version = model_version;
  const std::string line = SerializeFlagRecord(record) + "\n";

  struct stat info{};
  if (::fstat(fd_, &info) != 0) return Errno("cannot stat", path_);
  const off_t previous_size = info.st_size;

  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n =
        ::write(fd_, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      const absl::Status status = Errno("cannot write", path_);
      if (written > 0 && ::ftruncate(fd_, previous_size) != 0) {
        return Errno("cannot roll back partial write to", path_);
      }
      return status;
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd_) != 0) return Errno("cannot fsync", path_);
  return record;
}

}  // namespace recast
