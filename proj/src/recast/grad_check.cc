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

#include "recast/grad_check.h"

#include <algorithm>
#include <cmath>

#include "recast/status.h"
#include "recast/text_pipeline.h"

namespace recast {
namespace {

constexpr double kRelativeFloor = 1e-6;

}  // namespace

absl::StatusOr<GradCheckReport> GradCheckParams(const ModelConfig& config,
                                                BasicParams<double> params,
                                                const EmbeddingStore& store,
                                                const TrainExample& example,
                                                double tolerance,
                                                const GradientTamper& tamper) {
  RECAST_RETURN_IF_ERROR(CheckShapes(config, store));
  const EncodedWords words =
      EncodeWords(store, Tokenize(example.text), config.max_len);
  if (words.empty()) {
    return MakeError(ErrorKind::kNoWords,
                     "gradient check example has no words");
  }

  Gradients analytic = Gradients::Zeros(config);
  LossAndGradient(config, params, store, words, example.label, analytic);
  if (tamper) tamper(analytic);

  std::vector<const Matrix<double>*> analytic_tensors;
  analytic.ForEachTensor([&](const std::string&, const Matrix<double>& m) {
    analytic_tensors.push_back(&m);
  });

  // Perturbing `params` in place; ForEachTensor hands out references into it.
  std::vector<std::pair<std::string, Matrix<double>*>> tensors;
  params.ForEachTensor([&](const std::string& name, Matrix<double>& m) {
    tensors.emplace_back(name, &m);
  });

  GradCheckReport report;
  for (std::size_t t = 0; t < tensors.size(); ++t) {
    auto& [name, tensor] = tensors[t];
    TensorGradError entry{name, 0.0};
    for (std::size_t i = 0; i < tensor->values.size(); ++i) {
      const double original = tensor->values[i];
      tensor->values[i] = original + kGradCheckStep;
      const double plus = Loss(config, params, store, words, example.label);
      tensor->values[i] = original - kGradCheckStep;
      const double minus = Loss(config, params, store, words, example.label);
      tensor->values[i] = original;

      const double numeric = (plus - minus) / (2.0 * kGradCheckStep);
      const double exact = analytic_tensors[t]->values[i];
      const double denom =
          std::max({std::abs(exact), std::abs(numeric), kRelativeFloor});
      entry.max_relative_error =
          std::max(entry.max_relative_error, std::abs(exact - numeric) / denom);
    }
    if (report.worst_tensor.empty() ||
        entry.max_relative_error > report.max_relative_error) {
      report.max_relative_error = entry.max_relative_error;
      report.worst_tensor = name;
    }
    report.tensors.push_back(std::move(entry));
  }
  report.passed = report.max_relative_error <= tolerance;
  return report;
}

absl::StatusOr<GradCheckReport> GradCheck(const ModelConfig& config,
                                          const EmbeddingStore& store,
                                          const TrainExample& example,
                                          double tolerance,
                                          const GradientTamper& tamper) {
  RECAST_ASSIGN_OR_RETURN(BasicParams<double> params,
                          InitParams<double>(config));
  return GradCheckParams(config, std::move(params), store, example, tolerance,
                         tamper);
}

}  // namespace recast
