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

#include "recast/embedding_store.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>

#include "absl/strings/str_cat.h"
#include "recast/file_util.h"
#include "recast/status.h"

namespace recast {
namespace {

template <typename T>
absl::StatusOr<double> CosineImpl(std::span<const T> u, std::span<const T> v) {
  if (u.size() != v.size()) {
    return MakeError(
        ErrorKind::kInvalidArgument,
        absl::StrCat("cosine: length mismatch ", u.size(), " vs ", v.size()));
  }
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = u[i], b = v[i];
    dot += a * b;
    uu += a * a;
    vv += b * b;
  }
  if (uu == 0.0 || vv == 0.0) {
    return MakeError(ErrorKind::kInvalidArgument, "cosine: zero vector");
  }
  return std::clamp(dot / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

double SquaredNorm(std::span<const float> row) {
  double sum = 0.0;
  for (float x : row) sum += static_cast<double>(x) * x;
  return sum;
}

// Accumulates rows while parsing so that per-row errors can carry a
// location chosen by the parser.
class StoreBuilder {
 public:
  StoreBuilder(std::size_t vocab_size, std::size_t dim) : dim_(dim) {
    words_.reserve(vocab_size);
    values_.reserve(vocab_size * dim);
    seen_.reserve(vocab_size);
  }

  absl::Status Add(std::string word, std::span<const float> row,
                   std::string_view where) {
    if (word.empty()) {
      return MakeError(ErrorKind::kParse,
                       absl::StrCat("empty word at ", std::string(where)));
    }
    for (float x : row) {
      if (!std::isfinite(x)) {
        return MakeError(ErrorKind::kParse, absl::StrCat("non-finite value at ",
                                                         std::string(where)));
      }
    }
    if (SquaredNorm(row) == 0.0) {
      return MakeError(ErrorKind::kParse,
                       absl::StrCat("zero-norm vector for '", word, "' at ",
                                    std::string(where)));
    }
    if (!seen_.insert(word).second) {
      return MakeError(
          ErrorKind::kParse,
          absl::StrCat("duplicate word '", word, "' at ", std::string(where)));
    }
    words_.push_back(std::move(word));
    values_.insert(values_.end(), row.begin(), row.end());
    return absl::OkStatus();
  }

  absl::StatusOr<EmbeddingStore> Finish() && {
    return EmbeddingStore::Create(std::move(words_), std::move(values_), dim_);
  }

 private:
  std::size_t dim_;
  std::vector<std::string> words_;
  std::vector<float> values_;
  std::unordered_set<std::string> seen_;
};

struct Header {
  std::size_t vocab_size = 0;
  std::size_t dim = 0;
  std::size_t end = 0;  // offset just past the header newline
};

bool ParseCount(std::string_view token, std::size_t& out) {
  if (token.empty()) return false;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

std::string_view StripCr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

absl::StatusOr<Header> ParseHeader(std::string_view data) {
  const std::size_t newline = data.find('\n');
  if (newline == std::string_view::npos) {
    return MakeError(ErrorKind::kParse,
                     "malformed header at line 1: missing newline");
  }
  const auto fields = SplitFields(StripCr(data.substr(0, newline)));
  Header header;
  if (fields.size() != 2 || !ParseCount(fields[0], header.vocab_size) ||
      !ParseCount(fields[1], header.dim)) {
    return MakeError(
        ErrorKind::kParse,
        "malformed header at line 1: expected '<vocab_size> <dim>'");
  }
  if (header.vocab_size < 1 || header.dim < 1) {
    return MakeError(ErrorKind::kParse,
                     "malformed header at line 1: vocab_size and dim must be "
                     ">= 1");
  }
  header.end = newline + 1;
  return header;
}

bool ParseFloat(std::string_view token, float& out) {
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  // Out-of-range magnitudes are reported as non-finite by the caller.
  if (ec == std::errc::result_out_of_range && ptr == last) {
    out = std::numeric_limits<float>::infinity();
    return true;
  }
  return ec == std::errc() && ptr == last;
}

float ReadLittleEndianFloat(const char* bytes) {
  std::uint32_t bits = 0;
  for (int i = 3; i >= 0; --i) {
    bits = (bits << 8) | static_cast<unsigned char>(bytes[i]);
  }
  return std::bit_cast<float>(bits);
}

void AppendLittleEndianFloat(std::string& out, float value) {
  const auto bits = std::bit_cast<std::uint32_t>(value);
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
  }
}

}  // namespace

absl::StatusOr<EmbeddingStore> EmbeddingStore::Create(
    std::vector<std::string> words, std::vector<float> values,
    std::size_t dim) {
  if (dim < 1 || words.empty()) {
    return MakeError(ErrorKind::kInvalidArgument,
                     "embedding store needs dim >= 1 and at least one word");
  }
  if (values.size() != words.size() * dim) {
    return MakeError(ErrorKind::kInvalidArgument,
                     absl::StrCat("expected ", words.size() * dim,
                                  " values, got ", values.size()));
  }
  EmbeddingStore store;
  store.dim_ = dim;
  store.words_ = std::move(words);
  store.values_ = std::move(values);
  store.unit_values_.resize(store.values_.size());
  store.index_.reserve(store.words_.size());
  for (std::size_t r = 0; r < store.words_.size(); ++r) {
    const std::string& word = store.words_[r];
    if (!store.index_.emplace(word, r).second) {
      return MakeError(
          ErrorKind::kInvalidArgument,
          absl::StrCat("duplicate word '", word, "' at entry ", r + 1));
    }
    const auto row = store.Row(r);
    for (float x : row) {
      if (!std::isfinite(x)) {
        return MakeError(ErrorKind::kInvalidArgument,
                         absl::StrCat("non-finite value at entry ", r + 1));
      }
    }
    const double norm = std::sqrt(SquaredNorm(row));
    if (norm == 0.0) {
      return MakeError(ErrorKind::kInvalidArgument,
                       absl::StrCat("zero-norm vector at entry ", r + 1));
    }
    for (std::size_t c = 0; c < dim; ++c) {
      store.unit_values_[r * dim + c] = static_cast<double>(row[c]) / norm;
    }
  }
  return store;
}

std::optional<std::size_t> EmbeddingStore::IndexOf(
    std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::span<const float>> EmbeddingStore::Lookup(
    std::string_view word) const {
  const auto index = IndexOf(word);
  if (!index) return std::nullopt;
  return Row(*index);
}

absl::StatusOr<std::vector<Neighbor>> EmbeddingStore::Nearest(
    std::string_view query, std::size_t k,
    const std::unordered_set<std::string>& exclude) const {
  const auto query_index = IndexOf(query);
  if (!query_index) {
    return MakeError(ErrorKind::kNotFound,
                     absl::StrCat("word '", std::string(query),
                                  "' is not in the vocabulary"));
  }
  if (k == 0) return std::vector<Neighbor>{};

  const auto q = UnitRow(*query_index);
  struct Scored {
    double similarity;
    std::size_t index;
  };
  std::vector<Scored> scored;
  scored.reserve(words_.size());
  for (std::size_t r = 0; r < words_.size(); ++r) {
    if (r == *query_index || exclude.contains(words_[r])) continue;
    const auto row = UnitRow(r);
    double dot = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) dot += q[c] * row[c];
    scored.push_back({std::clamp(dot, -1.0, 1.0), r});
  }
  const auto before = [this](const Scored& a, const Scored& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return words_[a.index] < words_[b.index];
  };
  const std::size_t take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + take, scored.end(),
                    before);

  std::vector<Neighbor> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    out.push_back({words_[scored[i].index], scored[i].similarity});
  }
  return out;
}

absl::StatusOr<double> Cosine(std::span<const double> u,
                              std::span<const double> v) {
  return CosineImpl(u, v);
}

absl::StatusOr<double> Cosine(std::span<const float> u,
                              std::span<const float> v) {
  return CosineImpl(u, v);
}

absl::StatusOr<EmbeddingStore> ParseWord2VecText(std::string_view data) {
  RECAST_ASSIGN_OR_RETURN(const Header header, ParseHeader(data));
  StoreBuilder builder(header.vocab_size, header.dim);
  std::vector<float> row(header.dim);

  std::size_t pos = header.end;
  std::size_t line_number = 1;
  std::size_t entries = 0;
  while (pos < data.size()) {
    ++line_number;
    std::size_t newline = data.find('\n', pos);
    if (newline == std::string_view::npos) newline = data.size();
    const std::string_view line = StripCr(data.substr(pos, newline - pos));
    pos = newline + 1;

    const auto fields = SplitFields(line);
    if (fields.empty()) continue;  // blank line
    const std::string where = absl::StrCat("line ", line_number);
    if (entries == header.vocab_size) {
      return MakeError(
          ErrorKind::kParse,
          absl::StrCat("more entries than the header declares at ", where));
    }
    if (fields.size() != header.dim + 1) {
      return MakeError(
          ErrorKind::kParse,
          absl::StrCat("expected ", header.dim, " components, got ",
                       fields.size() - 1, " at ", where));
    }
    for (std::size_t c = 0; c < header.dim; ++c) {
      if (!ParseFloat(fields[c + 1], row[c])) {
        return MakeError(
            ErrorKind::kParse,
            absl::StrCat("malformed number '", std::string(fields[c + 1]),
                         "' at ", std::string(where)));
      }
    }
    RECAST_RETURN_IF_ERROR(builder.Add(std::string(fields[0]), row, where));
    ++entries;
  }
  if (entries != header.vocab_size) {
    return MakeError(ErrorKind::kParse,
                     absl::StrCat("header declares ", header.vocab_size,
                                  " entries but the file ends after ", entries,
                                  " (line ", line_number + 1, ")"));
  }
  return std::move(builder).Finish();
}

absl::StatusOr<EmbeddingStore> ParseWord2VecBinary(std::string_view data) {
  RECAST_ASSIGN_OR_RETURN(const Header header, ParseHeader(data));
  StoreBuilder builder(header.vocab_size, header.dim);
  std::vector<float> row(header.dim);

  std::size_t pos = header.end;
  for (std::size_t entry = 1; entry <= header.vocab_size; ++entry) {
    const std::string where = absl::StrCat("entry ", entry);
    // Some writers put the newline before the word instead of after the
    // vector; both are accepted.
    while (pos < data.size() && data[pos] == '\n') ++pos;
    const std::size_t space = data.find(' ', pos);
    if (space == std::string_view::npos) {
      return MakeError(ErrorKind::kTruncated,
                       absl::StrCat("truncated stream in word of ", where));
    }
    std::string word(data.substr(pos, space - pos));
    pos = space + 1;
    const std::size_t payload = header.dim * sizeof(float);
    if (data.size() - pos < payload) {
      return MakeError(ErrorKind::kTruncated,
                       absl::StrCat("truncated stream in vector of ", where));
    }
    for (std::size_t c = 0; c < header.dim; ++c) {
      row[c] = ReadLittleEndianFloat(data.data() + pos + c * sizeof(float));
    }
    pos += payload;
    if (pos < data.size() && data[pos] == '\n') ++pos;
    RECAST_RETURN_IF_ERROR(builder.Add(std::move(word), row, where));
  }
  if (pos != data.size()) {
    return MakeError(
        ErrorKind::kParse,
        absl::StrCat("header mismatch: ", data.size() - pos,
                     " trailing bytes after ", header.vocab_size, " entries"));
  }
  return std::move(builder).Finish();
}

std::string SerializeWord2VecText(const EmbeddingStore& store) {
  std::string out = absl::StrCat(store.size(), " ", store.dim(), "\n");
  char buffer[32];
  for (std::size_t r = 0; r < store.size(); ++r) {
    out += store.words()[r];
    for (float x : store.Row(r)) {
      auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), x);
      out.push_back(' ');
      out.append(buffer, ptr);
    }
    out.push_back('\n');
  }
  return out;
}

std::string SerializeWord2VecBinary(const EmbeddingStore& store) {
  std::string out = absl::StrCat(store.size(), " ", store.dim(), "\n");
  out.reserve(out.size() + store.size() * (store.dim() * 4 + 16));
  for (std::size_t r = 0; r < store.size(); ++r) {
    out += store.words()[r];
    out.push_back(' ');
    for (float x : store.Row(r)) AppendLittleEndianFloat(out, x);
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<EmbeddingStore> LoadEmbeddings(const std::string& path) {
  RECAST_ASSIGN_OR_RETURN(const std::string data, ReadFile(path));
  auto store = path.ends_with(".bin") ? ParseWord2VecBinary(data)
                                      : ParseWord2VecText(data);
  if (!store.ok()) return Annotate(store.status(), path);
  return store;
}

}  // namespace recast
