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

#ifndef RECAST_FLAG_LOG_H_
#define RECAST_FLAG_LOG_H_

#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"

namespace recast {

struct FlagInput {
  std::string text;
  int model_score = 0;
  std::string verdict;  // "false_positive" | "false_negative"
  std::optional<std::string> comment;
};

struct FlagRecord {
  std::string id;
  std::string timestamp;  // ISO-8601 UTC, millisecond precision
  std::string text;
  int model_score = 0;
  std::string verdict;
  std::optional<std::string> comment;
  std::string model_version;
};

bool IsValidVerdict(std::string_view verdict);

std::string SerializeFlagRecord(const FlagRecord& record);

// Strict: every field present with the right type, verdict in the enum,
// score in [0, 100], timestamp in the form written by FlagLog.
absl::StatusOr<FlagRecord> ParseFlagRecord(std::string_view line);

// Append-only JSON Lines log of user-submitted misclassification reports.
// Appends from any number of threads are serialized; each record is written
// with one write(2) on an O_APPEND descriptor and fsync'd before Append
// returns. A failed write is rolled back by truncating to the previous size.
class FlagLog {
 public:
  static absl::StatusOr<std::unique_ptr<FlagLog>> Open(const std::string& path);
  ~FlagLog();

  FlagLog(const FlagLog&) = delete;
  FlagLog& operator=(const FlagLog&) = delete;

  absl::StatusOr<FlagRecord> Append(const FlagInput& input,
                                    const std::string& model_version);

  const std::string& path() const { return path_; }

 private:
  FlagLog(std::string path, int fd);

  std::string NewId();

  std::string path_;
  int fd_ = -1;
  std::mutex mu_;
  std::mt19937_64 rng_;
};

}  // namespace recast

#endif  // RECAST_FLAG_LOG_H_
