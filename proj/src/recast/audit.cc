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

#include "recast/audit.h"

#include <algorithm>
#include <numeric>

#include "recast/counterfactual.h"
#include "recast/status.h"
#include "recast/text_pipeline.h"

namespace recast {

std::size_t MaxAttentionWord(const ScoreResult& result) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < result.word_attention.size(); ++i) {
    if (result.word_attention[i].weight > result.word_attention[best].weight) {
      best = i;
    }
  }
  return best;
}

absl::StatusOr<std::optional<SingleSwap>> BestSingleSwap(
    const Model& model, const EmbeddingStore& store, std::string_view text,
    const ScoreResult& scored) {
  const std::size_t target = MaxAttentionWord(scored);
  RECAST_ASSIGN_OR_RETURN(const std::vector<AlternativeCandidate> candidates,
                          Suggest(model, store, text, target, 1));
  if (candidates.empty() || !candidates.front().replacement) {
    return std::optional<SingleSwap>();
  }
  return std::optional<SingleSwap>(SingleSwap{
      target, *candidates.front().replacement, candidates.front().score});
}

AuditReportRow AuditText(const Model& model, const EmbeddingStore& store,
                         std::string_view text, std::optional<int> label) {
  AuditReportRow row;
  row.text = std::string(text);
  row.label = label;
  const auto scored = Score(model, store, text);
  if (!scored.ok()) {
    row.error = std::string(scored.status().message());
    return row;
  }
  row.score = scored->score;

  const std::vector<TokenSpan> words = WordsOnly(scored->spans);
  std::vector<std::size_t> order(words.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scored->word_attention[a].weight >
                            scored->word_attention[b].weight;
                   });
  for (std::size_t i = 0; i < std::min<std::size_t>(3, order.size()); ++i) {
    row.top_words.emplace_back(words[order[i]].text,
                               scored->word_attention[order[i]].weight);
  }

  const auto swap = BestSingleSwap(model, store, text, *scored);
  if (!swap.ok()) {
    row.error = std::string(swap.status().message());
    return row;
  }
  row.best_single_swap = *swap;
  return row;
}

std::vector<AuditReportRow> AuditCorpus(const Model& model,
                                        const EmbeddingStore& store,
                                        std::string_view jsonl) {
  std::vector<AuditReportRow> rows;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    std::size_t newline = jsonl.find('\n', pos);
    if (newline == std::string_view::npos) newline = jsonl.size();
    const std::string_view line = jsonl.substr(pos, newline - pos);
    pos = newline + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    const Json input = Json::parse(line, nullptr, false);
    const auto text = input.is_object() ? input.find("text") : input.end();
    if (input.is_discarded() || !input.is_object() || text == input.end() ||
        !text->is_string()) {
      AuditReportRow row;
      row.text = std::string(line);
      row.error = "line is not a JSON object with a string \"text\"";
      rows.push_back(std::move(row));
      continue;
    }
    std::optional<int> label;
    if (const auto l = input.find("label");
        l != input.end() && l->is_number_integer()) {
      label = l->get<int>();
    }
    rows.push_back(AuditText(model, store, text->get<std::string>(), label));
  }
  return rows;
}

Json AuditRowJson(const AuditReportRow& row) {
  Json out;
  out["text"] = row.text;
  out["label"] = row.label ? Json(*row.label) : Json(nullptr);
  out["score"] = row.score ? Json(*row.score) : Json(nullptr);
  Json top = Json::array();
  for (const auto& [word, attention] : row.top_words) {
    Json entry;
    entry["word"] = word;
    entry["attention"] = attention;
    top.push_back(std::move(entry));
  }
  out["top_words"] = std::move(top);
  if (row.best_single_swap) {
    Json swap;
    swap["word_index"] = row.best_single_swap->word_index;
    swap["replacement"] = row.best_single_swap->replacement;
    swap["new_score"] = row.best_single_swap->new_score;
    out["best_single_swap"] = std::move(swap);
  } else {
    out["best_single_swap"] = nullptr;
  }
  if (row.error) out["error"] = *row.error;
  return out;
}

}  // namespace recast
