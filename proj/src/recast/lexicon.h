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

#ifndef RECAST_LEXICON_H_
#define RECAST_LEXICON_H_

#include <span>
#include <string_view>

namespace recast::lexicon {

// A pejorative and the milder word that takes its place in the non-toxic
// half of the synthetic corpus. The demo embeddings put each pair close
// together so that the mild word is the pejorative's nearest neighbor.
struct WordPair {
  std::string_view pejorative;
  std::string_view mild;
};

std::span<const WordPair> AdjectivePairs();
std::span<const WordPair> NounPairs();

// Neutral adjectives with no pejorative counterpart.
std::span<const std::string_view> NeutralAdjectives();

// Things people comment on ("video", "post", ...).
std::span<const std::string_view> Subjects();

// Templates. "{A}" is an adjective slot, "{N}" a person-noun slot, "{T}" a
// subject slot.
std::span<const std::string_view> Templates();

// Non-toxic sentences in an informal dialect register, "{T}" slot only.
std::span<const std::string_view> DialectTemplates();

// Every word the templates and lexicons can produce, lowercase.
std::span<const std::string_view> FunctionWords();

bool IsPejorative(std::string_view word);

}  // namespace recast::lexicon

#endif  // RECAST_LEXICON_H_
