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

#include "gtest/gtest.h"

namespace recast {
namespace {

TEST(StatusTest, KindRoundTripsThroughPayload) {
  const absl::Status status = MakeError(ErrorKind::kNoWords, "nothing here");
  EXPECT_FALSE(status.ok());
  EXPECT_EQ(GetErrorKind(status), ErrorKind::kNoWords);
  EXPECT_EQ(status.message(), "nothing here");
  EXPECT_EQ(ErrorKindName(ErrorKind::kNoWords), "no_words");
}

TEST(StatusTest, ForeignAndOkStatusesAreUnknown) {
  EXPECT_EQ(GetErrorKind(absl::OkStatus()), ErrorKind::kUnknown);
  EXPECT_EQ(GetErrorKind(absl::InternalError("x")), ErrorKind::kUnknown);
}

TEST(StatusTest, AnnotateKeepsKindAndCode) {
  const absl::Status base = MakeError(ErrorKind::kTruncated, "short read");
  const absl::Status annotated = Annotate(base, "model.rcst");
  EXPECT_EQ(annotated.code(), base.code());
  EXPECT_EQ(GetErrorKind(annotated), ErrorKind::kTruncated);
  EXPECT_EQ(annotated.message(), "model.rcst: short read");
  EXPECT_TRUE(Annotate(absl::OkStatus(), "ctx").ok());
}

absl::StatusOr<int> Half(int x) {
  if (x % 2 != 0) return MakeError(ErrorKind::kInvalidArgument, "odd");
  return x / 2;
}

absl::StatusOr<int> Quarter(int x) {
  RECAST_ASSIGN_OR_RETURN(const int half, Half(x));
  RECAST_ASSIGN_OR_RETURN(const int quarter, Half(half));
  return quarter;
}

TEST(StatusTest, AssignOrReturnPropagates) {
  EXPECT_EQ(*Quarter(8), 2);
  EXPECT_EQ(GetErrorKind(Quarter(6).status()), ErrorKind::kInvalidArgument);
}

}  // namespace
}  // namespace recast
