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

#include "recast/train.h"

#include <cmath>
#include <numeric>
#include <random>

#include "absl/strings/str_cat.h"
#include "recast/random.h"
#include "recast/status.h"
#include "recast/text_pipeline.h"

namespace recast {
namespace {

void ApplyStep(ModelParams& params, const Gradients& grads, double step) {
  std::vector<const Matrix<double>*> flat;
  grads.ForEachTensor(
      [&](const std::string&, const Matrix<double>& g) { flat.push_back(&g); });
  std::size_t i = 0;
  params.ForEachTensor([&](const std::string&, Matrix<float>& p) {
    const Matrix<double>& g = *flat[i++];
    for (std::size_t k = 0; k < p.values.size(); ++k) {
      p.values[k] = static_cast<float>(static_cast<double>(p.values[k]) -
                                       step * g.values[k]);
    }
  });
}

void Zero(Gradients& grads) {
  grads.ForEachTensor([](const std::string&, Matrix<double>& g) {
    std::fill(g.values.begin(), g.values.end(), 0.0);
  });
}

std::uint64_t EpochSeed(std::uint64_t seed, std::size_t epoch) {
  return seed ^
         (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(epoch) + 1));
}

}  // namespace

CorpusMetrics Evaluate(const Model& model, const EmbeddingStore& store,
                       const std::vector<EncodedWords>& inputs,
                       const std::vector<int>& labels) {
  CorpusMetrics metrics;
  if (inputs.empty()) return metrics;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const ForwardOutput out =
        ForwardEncoded(model.config, model.params, store, inputs[i]);
    const int predicted = out.probability >= 0.5 ? 1 : 0;
    if (predicted == labels[i]) ++correct;
    metrics.loss += BinaryCrossEntropy(out.logit, labels[i]);
  }
  metrics.loss /= static_cast<double>(inputs.size());
  metrics.accuracy =
      static_cast<double>(correct) / static_cast<double>(inputs.size());
  return metrics;
}

absl::StatusOr<TrainResult> Train(
    ModelConfig config, const EmbeddingStore& store,
    const std::vector<TrainExample>& corpus, const TrainOptions& options,
    const std::function<void(const EpochStats&)>& on_epoch) {
  if (config.embedding_dim == 0) config.embedding_dim = store.dim();
  RECAST_RETURN_IF_ERROR(CheckShapes(config, store));
  if (corpus.empty()) {
    return MakeError(ErrorKind::kInvalidArgument, "training corpus is empty");
  }
  if (options.batch_size < 1) {
    return MakeError(ErrorKind::kInvalidArgument, "batch_size must be >= 1");
  }
  if (!std::isfinite(options.learning_rate) || options.learning_rate < 0) {
    return MakeError(ErrorKind::kInvalidArgument,
                     "learning_rate must be finite and >= 0");
  }

  std::vector<EncodedWords> inputs;
  std::vector<int> labels;
  inputs.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i].label != 0 && corpus[i].label != 1) {
      return MakeError(
          ErrorKind::kInvalidArgument,
          absl::StrCat("example ", i + 1, ": label must be 0 or 1"));
    }
    inputs.push_back(
        EncodeWords(store, Tokenize(corpus[i].text), config.max_len));
    if (inputs.back().empty()) {
      return MakeError(ErrorKind::kInvalidArgument,
                       absl::StrCat("example ", i + 1, " has no words"));
    }
    labels.push_back(corpus[i].label);
  }

  TrainResult result;
  result.model.config = config;
  RECAST_ASSIGN_OR_RETURN(result.model.params, InitParams<float>(config));
  Gradients grads = Gradients::Zeros(config);

  std::vector<std::size_t> order(corpus.size());
  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(EpochSeed(config.seed, epoch));
    Shuffle(order, rng);

    for (std::size_t start = 0; start < order.size();
         start += options.batch_size) {
      const std::size_t end =
          std::min(order.size(), start + options.batch_size);
      Zero(grads);
      double batch_loss = 0.0;
      for (std::size_t i = start; i < end; ++i) {
        batch_loss +=
            LossAndGradient(config, result.model.params, store,
                            inputs[order[i]], labels[order[i]], grads);
      }
      if (!std::isfinite(batch_loss)) {
        return MakeError(
            ErrorKind::kTraining,
            absl::StrCat("non-finite loss at epoch ", epoch, ", batch ",
                         start / options.batch_size + 1));
      }
      ApplyStep(result.model.params, grads,
                options.learning_rate / static_cast<double>(end - start));
    }

    const CorpusMetrics metrics = Evaluate(result.model, store, inputs, labels);
    if (!std::isfinite(metrics.loss)) {
      return MakeError(ErrorKind::kTraining,
                       absl::StrCat("non-finite loss after epoch ", epoch));
    }
    result.history.push_back({epoch, metrics.loss, metrics.accuracy});
    if (on_epoch) on_epoch(result.history.back());
  }
  return result;
}

}  // namespace recast
