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

#ifndef RECAST_API_JSON_H_
#define RECAST_API_JSON_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "recast/counterfactual.h"
#include "recast/embedding_store.h"
#include "recast/model.h"

namespace recast {

using Json = nlohmann::ordered_json;

// {score, probability, model_version, words: [{text, start, end, attention}]}
// Offsets are UTF-8 byte offsets into the scored text.
Json ScoreResponseJson(const ScoreResult& result,
                       const std::string& model_version);

// {candidates: [{replacement, similarity, text, score, probability}]}, with
// null replacement and similarity for the delete candidate.
Json AlternativesResponseJson(
    const std::vector<AlternativeCandidate>& candidates);

Json NeighborsJson(const std::vector<Neighbor>& neighbors);

// Compact serialization; invalid UTF-8 is replaced rather than thrown on.
std::string DumpJson(const Json& value);

// {error: {code, message}}
Json ErrorJson(std::string_view code, std::string_view message);

}  // namespace recast

#endif  // RECAST_API_JSON_H_
