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

#include "recast/lexicon.h"

#include <algorithm>
#include <array>

namespace recast::lexicon {
namespace {

constexpr std::array<WordPair, 12> kAdjectivePairs = {{
    {"idiotic", "nonsensical"},
    {"stupid", "unwise"},
    {"moronic", "misguided"},
    {"dumb", "simple"},
    {"pathetic", "weak"},
    {"worthless", "unhelpful"},
    {"disgusting", "unpleasant"},
    {"brainless", "careless"},
    {"trashy", "messy"},
    {"ignorant", "uninformed"},
    {"hideous", "unusual"},
    {"lame", "dull"},
}};

constexpr std::array<WordPair, 10> kNounPairs = {{
    {"moron", "person"},
    {"idiot", "beginner"},
    {"loser", "rookie"},
    {"clown", "performer"},
    {"jerk", "stranger"},
    {"imbecile", "newcomer"},
    {"fool", "friend"},
    {"creep", "neighbor"},
    {"scumbag", "fellow"},
    {"dimwit", "student"},
}};

constexpr std::array<std::string_view, 12> kNeutralAdjectives = {
    "great", "interesting", "helpful", "thoughtful", "clear", "funny",
    "long",  "short",       "new",     "old",        "nice",  "fair",
};

constexpr std::array<std::string_view, 12> kSubjects = {
    "video", "comment",  "post",  "article", "idea",   "song",
    "movie", "argument", "photo", "story",   "review", "answer",
};

constexpr std::array<std::string_view, 14> kTemplates = {
    "this is an {A} {T}",
    "what a {A} {T}",
    "your {T} is {A}",
    "you are a {N}",
    "only a {N} would write this {T}",
    "the {T} was really {A}",
    "you are such a {N}",
    "i think this {T} is {A}",
    "that {N} made this {T}",
    "who made this {A} {T}",
    "what a {N}",
    "such an {A} {T} honestly",
    "the guy who wrote this {T} is a {N}",
    "not gonna lie this {T} is {A}",
};

constexpr std::array<std::string_view, 7> kDialectTemplates = {
    "that {T} go hard fr",
    "this {T} lowkey fire",
    "finna share this {T} with the squad",
    "ion even care about that {T}",
    "he stay posting a good {T}",
    "deadass this {T} bussin no cap",
    "we been knew this {T} was gonna be fire",
};

constexpr std::array<std::string_view, 52> kFunctionWords = {
    "this", "is",      "an",     "what",  "a",     "your", "you",
    "are",  "only",    "would",  "write", "the",   "was",  "really",
    "such", "i",       "think",  "that",  "made",  "who",  "honestly",
    "guy",  "wrote",   "not",    "gonna", "lie",   "go",   "hard",
    "fr",   "lowkey",  "fire",   "finna", "share", "with", "squad",
    "ion",  "even",    "care",   "about", "he",    "stay", "posting",
    "good", "deadass", "bussin", "no",    "cap",   "we",   "been",
    "knew", "be",      "and",
};

}  // namespace

std::span<const WordPair> AdjectivePairs() { return kAdjectivePairs; }
std::span<const WordPair> NounPairs() { return kNounPairs; }
std::span<const std::string_view> NeutralAdjectives() {
  return kNeutralAdjectives;
}
std::span<const std::string_view> Subjects() { return kSubjects; }
std::span<const std::string_view> Templates() { return kTemplates; }
std::span<const std::string_view> DialectTemplates() {
  return kDialectTemplates;
}
std::span<const std::string_view> FunctionWords() { return kFunctionWords; }

bool IsPejorative(std::string_view word) {
  const auto match = [word](const WordPair& p) { return p.pejorative == word; };
  return std::any_of(kAdjectivePairs.begin(), kAdjectivePairs.end(), match) ||
         std::any_of(kNounPairs.begin(), kNounPairs.end(), match);
}

}  // namespace recast::lexicon
