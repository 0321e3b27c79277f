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

#include "recast/counterfactual.h"

#include <unordered_set>

#include "absl/strings/str_cat.h"
#include "recast/status.h"
#include "recast/text_pipeline.h"

namespace recast {
namespace {

absl::StatusOr<TokenSpan> WordAt(std::string_view text,
                                 std::size_t word_index) {
  const std::vector<TokenSpan> words = WordsOnly(Tokenize(text));
  if (word_index >= words.size()) {
    return MakeError(
        ErrorKind::kBadWordIndex,
        absl::StrCat("word_index ", word_index, " is out of range for ",
                     words.size(), " words"));
  }
  return words[word_index];
}

// Vocabulary entries such as "New_York" or "e.g." would change the word
// count of the edited text.
bool IsSingleWord(std::string_view word) {
  const std::vector<TokenSpan> spans = Tokenize(word);
  return spans.size() == 1 && spans[0].kind == TokenKind::kWord &&
         spans[0].text.size() == word.size();
}

std::size_t WhitespaceRunEnd(std::string_view text, std::size_t pos) {
  while (pos < text.size() && IsAsciiSpace(text[pos])) ++pos;
  return pos;
}

std::size_t WhitespaceRunStart(std::string_view text, std::size_t pos) {
  while (pos > 0 && IsAsciiSpace(text[pos - 1])) --pos;
  return pos;
}

absl::StatusOr<AlternativeCandidate> ScoreCandidate(
    const Model& model, const EmbeddingStore& store, std::string_view text,
    std::size_t word_index, Replacement replacement,
    std::optional<double> similarity) {
  AlternativeCandidate candidate;
  RECAST_ASSIGN_OR_RETURN(candidate.resulting_text,
                          ApplyEdit(text, word_index, replacement));
  RECAST_ASSIGN_OR_RETURN(const ScoreResult scored,
                          Score(model, store, candidate.resulting_text));
  candidate.replacement = std::move(replacement);
  candidate.similarity = similarity;
  candidate.score = scored.score;
  candidate.probability = scored.probability;
  return candidate;
}

}  // namespace

absl::StatusOr<std::string> ApplyEdit(std::string_view text,
                                      std::size_t word_index,
                                      const Replacement& replacement) {
  RECAST_ASSIGN_OR_RETURN(const TokenSpan word, WordAt(text, word_index));
  if (replacement) {
    if (replacement->empty()) {
      return MakeError(ErrorKind::kInvalidArgument,
                       "replacement must not be empty");
    }
    const std::string inserted = StartsUppercase(word.text)
                                     ? CapitalizeFirst(*replacement)
                                     : *replacement;
    std::string out(text.substr(0, word.byte_start));
    out += inserted;
    out += text.substr(word.byte_end);
    return out;
  }
  std::size_t start = word.byte_start;
  std::size_t end = word.byte_end;
  const std::size_t after = WhitespaceRunEnd(text, end);
  if (after > end) {
    end = after;
  } else {
    start = WhitespaceRunStart(text, start);
  }
  std::string out(text.substr(0, start));
  out += text.substr(end);
  return out;
}

absl::StatusOr<std::vector<AlternativeCandidate>> Suggest(
    const Model& model, const EmbeddingStore& store, std::string_view text,
    std::size_t word_index, std::size_t k) {
  if (k < 1) {
    return MakeError(ErrorKind::kInvalidArgument, "k must be >= 1");
  }
  RECAST_RETURN_IF_ERROR(Score(model, store, text).status());
  RECAST_ASSIGN_OR_RETURN(const TokenSpan target, WordAt(text, word_index));

  std::optional<std::string> key;
  if (store.IndexOf(target.text)) {
    key = target.text;
  } else if (const std::string lower = ToLowerWord(target.text);
             store.IndexOf(lower)) {
    key = lower;
  }

  std::vector<AlternativeCandidate> candidates;
  if (key) {
    // Case-insensitive filtering can drop neighbors, so widen the query until
    // k survive or the vocabulary runs out.
    std::vector<Neighbor> kept;
    std::size_t want = std::min(store.size(), 2 * k + 8);
    while (true) {
      RECAST_ASSIGN_OR_RETURN(const std::vector<Neighbor> neighbors,
                              store.Nearest(*key, want));
      kept.clear();
      std::unordered_set<std::string> seen = {ToLowerWord(target.text),
                                              ToLowerWord(*key)};
      for (const auto& neighbor : neighbors) {
        if (!IsSingleWord(neighbor.word)) continue;
        if (!seen.insert(ToLowerWord(neighbor.word)).second) continue;
        kept.push_back(neighbor);
        if (kept.size() == k) break;
      }
      if (kept.size() == k || neighbors.size() < want) break;
      want = std::min(store.size(), want * 2);
    }
    for (const auto& neighbor : kept) {
      RECAST_ASSIGN_OR_RETURN(
          AlternativeCandidate candidate,
          ScoreCandidate(model, store, text, word_index, neighbor.word,
                         neighbor.similarity));
      candidates.push_back(std::move(candidate));
    }
  }

  RECAST_ASSIGN_OR_RETURN(const std::string deleted,
                          ApplyEdit(text, word_index, std::nullopt));
  if (!WordsOnly(Tokenize(deleted)).empty()) {
    RECAST_ASSIGN_OR_RETURN(AlternativeCandidate candidate,
                            ScoreCandidate(model, store, text, word_index,
                                           std::nullopt, std::nullopt));
    candidates.push_back(std::move(candidate));
  }
  return candidates;
}

}  // namespace recast
