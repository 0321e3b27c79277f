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

#ifndef RECAST_MODEL_IO_H_
#define RECAST_MODEL_IO_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "recast/embedding_store.h"
#include "recast/model.h"

namespace recast {

inline constexpr std::string_view kModelMagic = "RCST";
inline constexpr std::uint32_t kModelFormatVersion = 1;

// Model file layout, all integers and reals little-endian:
//   magic "RCST"
//   u32 format version (1)
//   u32 model_dim, u32 num_heads, u32 ffn_dim, u32 max_len
//   u64 seed
//   u32 embedding_dim
//   every tensor as float32, row-major, in BasicParams canonical order
std::string SaveModel(const Model& model);

// Fails on bad magic, unknown version, an embedding_dim that differs from
// the store, truncation, or trailing bytes.
absl::StatusOr<Model> LoadModel(std::string_view bytes,
                                const EmbeddingStore& store);

absl::Status SaveModelFile(const Model& model, const std::string& path);
absl::StatusOr<Model> LoadModelFile(const std::string& path,
                                    const EmbeddingStore& store);

// "rcst1-" followed by the FNV-1a 64-bit hash of the saved bytes in hex.
std::string ModelVersion(const Model& model);

}  // namespace recast

#endif  // RECAST_MODEL_IO_H_
