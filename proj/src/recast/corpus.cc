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

#include "recast/corpus.h"

#include <random>

#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "recast/lexicon.h"
#include "recast/random.h"
#include "recast/status.h"
#include "recast/text_pipeline.h"

namespace recast {
namespace {

template <typename T>
const T& Pick(std::span<const T> items, std::mt19937_64& rng) {
  return items[RandomBelow(rng, items.size())];
}

std::string Fill(std::string_view pattern, std::string_view judgement,
                 std::string_view subject) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size();) {
    if (pattern.substr(i, 3) == "{A}" || pattern.substr(i, 3) == "{N}") {
      out += judgement;
      i += 3;
    } else if (pattern.substr(i, 3) == "{T}") {
      out += subject;
      i += 3;
    } else {
      out.push_back(pattern[i++]);
    }
  }
  return out;
}

std::string Surface(std::string sentence, std::mt19937_64& rng) {
  if (UniformUnit(rng) < 0.3) sentence = CapitalizeFirst(sentence);
  const double end = UniformUnit(rng);
  if (end < 0.15) {
    sentence += ".";
  } else if (end < 0.3) {
    sentence += "!";
  }
  return sentence;
}

std::string MakeSentence(bool toxic, std::mt19937_64& rng) {
  const std::string_view subject = Pick(lexicon::Subjects(), rng);
  if (!toxic && UniformUnit(rng) < 0.1) {
    return Fill(Pick(lexicon::DialectTemplates(), rng), "", subject);
  }
  const std::string_view pattern = Pick(lexicon::Templates(), rng);
  const bool noun_slot = pattern.find("{N}") != std::string_view::npos;
  const auto& pairs =
      noun_slot ? lexicon::NounPairs() : lexicon::AdjectivePairs();
  const lexicon::WordPair& pair = Pick(pairs, rng);
  std::string_view judgement = toxic ? pair.pejorative : pair.mild;
  if (!toxic && !noun_slot && UniformUnit(rng) < 0.4) {
    judgement = Pick(lexicon::NeutralAdjectives(), rng);
  }
  return Fill(pattern, judgement, subject);
}

}  // namespace

absl::StatusOr<std::vector<TrainExample>> GenerateCorpus(std::uint64_t seed,
                                                         std::size_t n) {
  if (n < 2) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("corpus size must be >= 2, got ", n));
  }
  std::mt19937_64 rng(seed);
  std::vector<int> labels(n, 0);
  for (std::size_t i = 0; i < n / 2; ++i) labels[i] = 1;
  Shuffle(labels, rng);

  std::vector<TrainExample> corpus;
  corpus.reserve(n);
  for (int label : labels) {
    corpus.push_back({Surface(MakeSentence(label == 1, rng), rng), label});
  }
  return corpus;
}

absl::StatusOr<std::vector<TrainExample>> ParseCorpusJsonl(
    std::string_view data) {
  std::vector<TrainExample> corpus;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    ++line_number;
    std::size_t newline = data.find('\n', pos);
    if (newline == std::string_view::npos) newline = data.size();
    const std::string_view line = data.substr(pos, newline - pos);
    pos = newline + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    const auto where = absl::StrCat("corpus line ", line_number);
    const nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.is_object()) {
      return MakeError(ErrorKind::kParse,
                       absl::StrCat("invalid JSON object at ", where));
    }
    const auto text = row.find("text");
    const auto label = row.find("label");
    if (text == row.end() || !text->is_string()) {
      return MakeError(ErrorKind::kParse,
                       absl::StrCat("missing string \"text\" at ", where));
    }
    if (label == row.end() || !label->is_number_integer() ||
        (label->get<int>() != 0 && label->get<int>() != 1)) {
      return MakeError(ErrorKind::kParse,
                       absl::StrCat("\"label\" must be 0 or 1 at ", where));
    }
    corpus.push_back({text->get<std::string>(), label->get<int>()});
  }
  return corpus;
}

std::string SerializeCorpusJsonl(const std::vector<TrainExample>& corpus) {
  std::string out;
  for (const auto& example : corpus) {
    nlohmann::ordered_json row;
    row["text"] = example.text;
    row["label"] = example.label;
    out += row.dump();
    out.push_back('\n');
  }
  return out;
}

}  // namespace recast
