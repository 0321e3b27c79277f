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

#ifndef RECAST_TRAIN_H_
#define RECAST_TRAIN_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "absl/status/statusor.h"
#include "recast/corpus.h"
#include "recast/embedding_store.h"
#include "recast/model.h"

namespace recast {

struct TrainOptions {
  std::size_t epochs = 10;
  std::size_t batch_size = 16;
  double learning_rate = 0.05;
};

// Loss and accuracy of the whole corpus, measured after the epoch's updates.
struct EpochStats {
  std::size_t epoch = 0;  // 1-based
  double loss = 0.0;
  double accuracy = 0.0;

  friend bool operator==(const EpochStats&, const EpochStats&) = default;
};

struct TrainResult {
  Model model;
  std::vector<EpochStats> history;
};

struct CorpusMetrics {
  double loss = 0.0;
  double accuracy = 0.0;  // prediction = probability >= 0.5
};

CorpusMetrics Evaluate(const Model& model, const EmbeddingStore& store,
                       const std::vector<EncodedWords>& inputs,
                       const std::vector<int>& labels);

// Mini-batch gradient descent on mean binary cross-entropy with a fixed
// learning rate. Store embeddings stay frozen. The visiting order of each
// epoch depends only on config.seed and the epoch number, so equal inputs
// give bit-equal parameters and history. A zero config.embedding_dim is
// taken from the store.
absl::StatusOr<TrainResult> Train(
    ModelConfig config, const EmbeddingStore& store,
    const std::vector<TrainExample>& corpus, const TrainOptions& options,
    const std::function<void(const EpochStats&)>& on_epoch = {});

}  // namespace recast

#endif  // RECAST_TRAIN_H_
