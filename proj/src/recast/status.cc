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

#include "recast/status.h"

#include <array>
#include <optional>

#include "absl/strings/cord.h"

namespace recast {
namespace {

constexpr char kErrorKindUrl[] = "type.recast/error_kind";

struct KindInfo {
  ErrorKind kind;
  std::string_view name;
  absl::StatusCode code;
};

constexpr std::array<KindInfo, 15> kKinds = {{
    {ErrorKind::kUnknown, "unknown", absl::StatusCode::kUnknown},
    {ErrorKind::kInvalidArgument, "invalid_argument",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kParse, "parse_error", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kIo, "io_error", absl::StatusCode::kUnavailable},
    {ErrorKind::kEmptyText, "empty_text", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kNoWords, "no_words", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kTooLong, "too_long", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kBadWordIndex, "bad_word_index", absl::StatusCode::kOutOfRange},
    {ErrorKind::kNotFound, "not_found", absl::StatusCode::kNotFound},
    {ErrorKind::kBadMagic, "bad_magic", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kVersionMismatch, "version_mismatch",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kDimensionMismatch, "dimension_mismatch",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kTruncated, "truncated", absl::StatusCode::kDataLoss},
    {ErrorKind::kTraining, "training_error", absl::StatusCode::kInternal},
    {ErrorKind::kStorage, "storage_error", absl::StatusCode::kInternal},
}};

const KindInfo& Info(ErrorKind kind) {
  for (const auto& info : kKinds) {
    if (info.kind == kind) return info;
  }
  return kKinds[0];
}

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) { return Info(kind).name; }

absl::Status MakeError(ErrorKind kind, std::string_view message) {
  absl::Status status(Info(kind).code, std::string(message));
  status.SetPayload(kErrorKindUrl, absl::Cord(std::string(Info(kind).name)));
  return status;
}

ErrorKind GetErrorKind(const absl::Status& status) {
  if (status.ok()) return ErrorKind::kUnknown;
  const auto payload = status.GetPayload(kErrorKindUrl);
  if (!payload) return ErrorKind::kUnknown;
  const std::string name(*payload);
  for (const auto& info : kKinds) {
    if (info.name == name) return info.kind;
  }
  return ErrorKind::kUnknown;
}

absl::Status Annotate(const absl::Status& status, std::string_view context) {
  if (status.ok()) return status;
  absl::Status annotated(status.code(), std::string(context) + ": " +
                                            std::string(status.message()));
  if (auto payload = status.GetPayload(kErrorKindUrl)) {
    annotated.SetPayload(kErrorKindUrl, *payload);
  }
  return annotated;
}

}  // namespace recast
