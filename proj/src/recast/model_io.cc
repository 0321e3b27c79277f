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

#include "recast/model_io.h"

#include <bit>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "recast/file_util.h"
#include "recast/status.h"

namespace recast {
namespace {

template <typename U>
void AppendLittleEndian(std::string& out, U value) {
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
  }
}

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  template <typename U>
  bool Read(U& value) {
    if (data_.size() - pos_ < sizeof(U)) return false;
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      v |= static_cast<U>(static_cast<unsigned char>(data_[pos_ + i]))
           << (8 * i);
    }
    pos_ += sizeof(U);
    value = v;
    return true;
  }

  bool done() const { return pos_ == data_.size(); }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

absl::Status Truncated(std::string_view what) {
  return MakeError(
      ErrorKind::kTruncated,
      absl::StrCat("model stream truncated in ", std::string(what)));
}

}  // namespace

std::string SaveModel(const Model& model) {
  const ModelConfig& c = model.config;
  std::string out(kModelMagic);
  AppendLittleEndian<std::uint32_t>(out, kModelFormatVersion);
  AppendLittleEndian<std::uint32_t>(out,
                                    static_cast<std::uint32_t>(c.model_dim));
  AppendLittleEndian<std::uint32_t>(out,
                                    static_cast<std::uint32_t>(c.num_heads));
  AppendLittleEndian<std::uint32_t>(out, static_cast<std::uint32_t>(c.ffn_dim));
  AppendLittleEndian<std::uint32_t>(out, static_cast<std::uint32_t>(c.max_len));
  AppendLittleEndian<std::uint64_t>(out, c.seed);
  AppendLittleEndian<std::uint32_t>(
      out, static_cast<std::uint32_t>(c.embedding_dim));
  model.params.ForEachTensor([&](const std::string&, const Matrix<float>& m) {
    for (float v : m.values) {
      AppendLittleEndian<std::uint32_t>(out, std::bit_cast<std::uint32_t>(v));
    }
  });
  return out;
}

absl::StatusOr<Model> LoadModel(std::string_view bytes,
                                const EmbeddingStore& store) {
  if (bytes.size() < kModelMagic.size()) return Truncated("magic");
  if (bytes.substr(0, kModelMagic.size()) != kModelMagic) {
    return MakeError(ErrorKind::kBadMagic, "not a model file (bad magic)");
  }
  Reader reader(bytes.substr(kModelMagic.size()));
  std::uint32_t version = 0;
  if (!reader.Read(version)) return Truncated("version");
  if (version != kModelFormatVersion) {
    return MakeError(
        ErrorKind::kVersionMismatch,
        absl::StrCat("model format version ", version,
                     " is not supported (expected ", kModelFormatVersion, ")"));
  }
  std::uint32_t model_dim, num_heads, ffn_dim, max_len, embedding_dim;
  std::uint64_t seed;
  if (!reader.Read(model_dim) || !reader.Read(num_heads) ||
      !reader.Read(ffn_dim) || !reader.Read(max_len) || !reader.Read(seed) ||
      !reader.Read(embedding_dim)) {
    return Truncated("config");
  }
  Model model;
  model.config = {model_dim, num_heads, ffn_dim, max_len, seed, embedding_dim};
  RECAST_RETURN_IF_ERROR(model.config.Validate());
  if (embedding_dim != store.dim()) {
    return MakeError(
        ErrorKind::kDimensionMismatch,
        absl::StrCat("model was saved with embedding_dim ", embedding_dim,
                     " but the store has dim ", store.dim()));
  }

  model.params = ModelParams::Zeros(model.config);
  std::size_t expected = 0;
  model.params.ForEachTensor([&](const std::string&, const Matrix<float>& m) {
    expected += m.values.size();
  });
  if (reader.remaining() / 4 < expected) return Truncated("tensors");
  if (reader.remaining() != expected * 4) {
    return MakeError(
        ErrorKind::kParse,
        absl::StrCat("model stream has ", reader.remaining() - expected * 4,
                     " trailing bytes"));
  }
  bool finite = true;
  model.params.ForEachTensor([&](const std::string&, Matrix<float>& m) {
    for (float& v : m.values) {
      std::uint32_t bits = 0;
      reader.Read(bits);
      v = std::bit_cast<float>(bits);
      finite = finite && std::isfinite(v);
    }
  });
  if (!finite) {
    return MakeError(ErrorKind::kParse, "model contains non-finite values");
  }
  return model;
}

absl::Status SaveModelFile(const Model& model, const std::string& path) {
  return WriteFile(path, SaveModel(model));
}

absl::StatusOr<Model> LoadModelFile(const std::string& path,
                                    const EmbeddingStore& store) {
  RECAST_ASSIGN_OR_RETURN(const std::string bytes, ReadFile(path));
  auto model = LoadModel(bytes, store);
  if (!model.ok()) return Annotate(model.status(), path);
  return model;
}

std::string ModelVersion(const Model& model) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : SaveModel(model)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return absl::StrFormat("rcst%d-%016x", kModelFormatVersion, hash);
}

}  // namespace recast
