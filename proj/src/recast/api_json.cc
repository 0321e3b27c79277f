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

#include "recast/api_json.h"

namespace recast {

Json ScoreResponseJson(const ScoreResult& result,
                       const std::string& model_version) {
  Json words = Json::array();
  const std::vector<TokenSpan> spans = WordsOnly(result.spans);
  for (std::size_t i = 0; i < spans.size(); ++i) {
    Json word;
    word["text"] = spans[i].text;
    word["start"] = spans[i].byte_start;
    word["end"] = spans[i].byte_end;
    word["attention"] = result.word_attention[i].weight;
    words.push_back(std::move(word));
  }
  Json out;
  out["score"] = result.score;
  out["probability"] = result.probability;
  out["model_version"] = model_version;
  out["words"] = std::move(words);
  return out;
}

Json AlternativesResponseJson(
    const std::vector<AlternativeCandidate>& candidates) {
  Json list = Json::array();
  for (const auto& candidate : candidates) {
    Json row;
    row["replacement"] =
        candidate.replacement ? Json(*candidate.replacement) : Json(nullptr);
    row["similarity"] =
        candidate.similarity ? Json(*candidate.similarity) : Json(nullptr);
    row["text"] = candidate.resulting_text;
    row["score"] = candidate.score;
    row["probability"] = candidate.probability;
    list.push_back(std::move(row));
  }
  Json out;
  out["candidates"] = std::move(list);
  return out;
}

Json NeighborsJson(const std::vector<Neighbor>& neighbors) {
  Json list = Json::array();
  for (const auto& neighbor : neighbors) {
    Json row;
    row["word"] = neighbor.word;
    row["similarity"] = neighbor.similarity;
    list.push_back(std::move(row));
  }
  return list;
}

std::string DumpJson(const Json& value) {
  return value.dump(-1, ' ', false, Json::error_handler_t::replace);
}

Json ErrorJson(std::string_view code, std::string_view message) {
  Json error;
  error["code"] = code;
  error["message"] = message;
  Json out;
  out["error"] = std::move(error);
  return out;
}

}  // namespace recast
