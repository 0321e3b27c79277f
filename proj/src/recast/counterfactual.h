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

#ifndef RECAST_COUNTERFACTUAL_H_
#define RECAST_COUNTERFACTUAL_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "recast/embedding_store.h"
#include "recast/model.h"

namespace recast {

// A word to put in place of the target, or nullopt to delete the target.
using Replacement = std::optional<std::string>;

struct AlternativeCandidate {
  Replacement replacement;           // nullopt = delete
  std::optional<double> similarity;  // nullopt iff delete
  std::string resulting_text;
  int score = 0;
  double probability = 0.0;
};

// Swap: the target word's bytes are replaced; when the original starts with
// an uppercase letter the replacement's first letter is uppercased. Delete:
// the word goes along with one adjacent whitespace run, the following run if
// there is one, else the preceding run. Bytes elsewhere are untouched.
absl::StatusOr<std::string> ApplyEdit(std::string_view text,
                                      std::size_t word_index,
                                      const Replacement& replacement);

// Up to k swap candidates taken from the embedding neighbors of the target
// word, then one delete candidate. Each is scored by the classifier.
//
// The target is looked up exactly, then lowercased. Neighbors equal to the
// target ignoring case, or equal ignoring case to a better-ranked neighbor,
// are skipped, as are neighbors that do not tokenize as a single word. An
// out-of-vocabulary target gets the delete candidate only.
// The delete candidate is left out when removing the word would leave the
// text without words, since such a text cannot be scored.
absl::StatusOr<std::vector<AlternativeCandidate>> Suggest(
    const Model& model, const EmbeddingStore& store, std::string_view text,
    std::size_t word_index, std::size_t k);

}  // namespace recast

#endif  // RECAST_COUNTERFACTUAL_H_
