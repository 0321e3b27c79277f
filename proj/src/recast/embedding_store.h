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

#ifndef RECAST_EMBEDDING_STORE_H_
#define RECAST_EMBEDDING_STORE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "absl/status/statusor.h"

namespace recast {

struct Neighbor {
  std::string word;
  double similarity = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Vocabulary plus a row-major float matrix of word vectors. Rows keep file
// order; a second double-precision copy holds each row scaled to unit length
// for cosine ranking. Immutable once built, so concurrent readers are fine.
//
// Lookups are case-sensitive. Callers that want case folding do it
// themselves.
class EmbeddingStore {
 public:
  // Validates uniqueness, finiteness and nonzero norms. `values` holds
  // words.size() * dim floats.
  static absl::StatusOr<EmbeddingStore> Create(std::vector<std::string> words,
                                               std::vector<float> values,
                                               std::size_t dim);

  std::size_t size() const { return words_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& words() const { return words_; }

  std::optional<std::size_t> IndexOf(std::string_view word) const;
  std::optional<std::span<const float>> Lookup(std::string_view word) const;

  std::span<const float> Row(std::size_t index) const {
    return {values_.data() + index * dim_, dim_};
  }
  std::span<const double> UnitRow(std::size_t index) const {
    return {unit_values_.data() + index * dim_, dim_};
  }

  // Up to k words ranked by descending cosine similarity to `query`, ties by
  // ascending byte-wise word order. The query and everything in `exclude`
  // are skipped. Exact full scan.
  absl::StatusOr<std::vector<Neighbor>> Nearest(
      std::string_view query, std::size_t k,
      const std::unordered_set<std::string>& exclude = {}) const;

  friend bool operator==(const EmbeddingStore& a, const EmbeddingStore& b) {
    return a.dim_ == b.dim_ && a.words_ == b.words_ && a.values_ == b.values_;
  }

 private:
  EmbeddingStore() = default;

  std::size_t dim_ = 0;
  std::vector<std::string> words_;
  std::vector<float> values_;
  std::vector<double> unit_values_;
  std::unordered_map<std::string, std::size_t> index_;
};

// u.v / (|u||v|) in double, clamped to [-1, 1]. Fails on length mismatch or a
// zero vector.
absl::StatusOr<double> Cosine(std::span<const double> u,
                              std::span<const double> v);
absl::StatusOr<double> Cosine(std::span<const float> u,
                              std::span<const float> v);

// Word2vec text format: "<vocab> <dim>\n" then "<word> <v1> ... <vdim>\n".
// Errors name the 1-based line.
absl::StatusOr<EmbeddingStore> ParseWord2VecText(std::string_view data);

// Word2vec binary format: the same ASCII header, then per entry the word,
// one space, dim little-endian float32 values and an optional '\n'.
absl::StatusOr<EmbeddingStore> ParseWord2VecBinary(std::string_view data);

std::string SerializeWord2VecText(const EmbeddingStore& store);
std::string SerializeWord2VecBinary(const EmbeddingStore& store);

// Reads a file, choosing the binary parser for a ".bin" suffix and the text
// parser otherwise.
absl::StatusOr<EmbeddingStore> LoadEmbeddings(const std::string& path);

}  // namespace recast

#endif  // RECAST_EMBEDDING_STORE_H_
