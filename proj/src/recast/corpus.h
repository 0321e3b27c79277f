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

#ifndef RECAST_CORPUS_H_
#define RECAST_CORPUS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace recast {

struct TrainExample {
  std::string text;
  int label = 0;  // 1 = toxic

  friend bool operator==(const TrainExample&, const TrainExample&) = default;
};

// Templated sentences: floor(n/2) toxic examples built around a lexicon
// pejorative, the rest non-toxic (mild or neutral fillers, plus a slice of
// informal-dialect sentences). Fully determined by (seed, n). Requires n >= 2.
absl::StatusOr<std::vector<TrainExample>> GenerateCorpus(std::uint64_t seed,
                                                         std::size_t n);

// JSON Lines, one {"text": ..., "label": 0|1} per line. Blank lines are
// skipped; errors name the 1-based line.
absl::StatusOr<std::vector<TrainExample>> ParseCorpusJsonl(
    std::string_view data);

std::string SerializeCorpusJsonl(const std::vector<TrainExample>& corpus);

}  // namespace recast

#endif  // RECAST_CORPUS_H_
