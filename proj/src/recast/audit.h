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

#ifndef RECAST_AUDIT_H_
#define RECAST_AUDIT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "recast/api_json.h"
#include "recast/embedding_store.h"
#include "recast/model.h"

namespace recast {

struct SingleSwap {
  std::size_t word_index = 0;
  std::string replacement;
  int new_score = 0;
};

struct AuditReportRow {
  std::string text;
  std::optional<int> label;
  std::optional<int> score;
  std::vector<std::pair<std::string, double>> top_words;  // <= 3, by attention
  std::optional<SingleSwap> best_single_swap;
  std::optional<std::string> error;
};

// Index of the highest-attention word; the earliest wins ties.
std::size_t MaxAttentionWord(const ScoreResult& result);

// Swaps the highest-attention word for its rank-1 embedding neighbor and
// rescores. nullopt when that word has no usable neighbor.
absl::StatusOr<std::optional<SingleSwap>> BestSingleSwap(
    const Model& model, const EmbeddingStore& store, std::string_view text,
    const ScoreResult& scored);

AuditReportRow AuditText(const Model& model, const EmbeddingStore& store,
                         std::string_view text, std::optional<int> label);

// One row per non-blank JSON Lines input line. Lines that fail to parse or
// score become rows carrying `error`; the run always completes.
std::vector<AuditReportRow> AuditCorpus(const Model& model,
                                        const EmbeddingStore& store,
                                        std::string_view jsonl);

Json AuditRowJson(const AuditReportRow& row);

}  // namespace recast

#endif  // RECAST_AUDIT_H_
