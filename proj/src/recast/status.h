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

#ifndef RECAST_STATUS_H_
#define RECAST_STATUS_H_

#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace recast {

// Machine-readable failure category attached to an absl::Status as a payload.
// The HTTP layer and the C API branch on this instead of parsing messages.
enum class ErrorKind {
  kUnknown = 0,
  kInvalidArgument,
  kParse,
  kIo,
  kEmptyText,
  kNoWords,
  kTooLong,
  kBadWordIndex,
  kNotFound,
  kBadMagic,
  kVersionMismatch,
  kDimensionMismatch,
  kTruncated,
  kTraining,
  kStorage,
};

// Snake-case name used on the wire, e.g. "empty_text".
std::string_view ErrorKindName(ErrorKind kind);

absl::Status MakeError(ErrorKind kind, std::string_view message);

// kUnknown for OK statuses and statuses created elsewhere.
ErrorKind GetErrorKind(const absl::Status& status);

// Same code and kind, message prefixed with "<context>: ".
absl::Status Annotate(const absl::Status& status, std::string_view context);

}  // namespace recast

#define RECAST_STATUS_CONCAT_INNER_(a, b) a##b
#define RECAST_STATUS_CONCAT_(a, b) RECAST_STATUS_CONCAT_INNER_(a, b)

#define RECAST_RETURN_IF_ERROR(expr)        \
  do {                                      \
    ::absl::Status _recast_status = (expr); \
    if (!_recast_status.ok()) {             \
      return _recast_status;                \
    }                                       \
  } while (0)

#define RECAST_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                  \
  if (!statusor.ok()) {                                     \
    return statusor.status();                               \
  }                                                         \
  lhs = std::move(statusor).value()

#define RECAST_ASSIGN_OR_RETURN(lhs, rexpr) \
  RECAST_ASSIGN_OR_RETURN_IMPL_(            \
      RECAST_STATUS_CONCAT_(_recast_statusor_, __LINE__), lhs, rexpr)

#endif  // RECAST_STATUS_H_
