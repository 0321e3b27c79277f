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

#ifndef RECAST_GRAD_CHECK_H_
#define RECAST_GRAD_CHECK_H_

#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "recast/corpus.h"
#include "recast/embedding_store.h"
#include "recast/model.h"

namespace recast {

struct TensorGradError {
  std::string name;
  double max_relative_error = 0.0;
};

struct GradCheckReport {
  bool passed = false;
  double max_relative_error = 0.0;
  std::string worst_tensor;
  std::vector<TensorGradError> tensors;  // canonical tensor order
};

// Central finite-difference step.
inline constexpr double kGradCheckStep = 1e-5;

// Applied to the analytic gradients before comparison. Lets tests confirm the
// harness notices a wrong gradient.
using GradientTamper = std::function<void(Gradients&)>;

// Compares analytic gradients of the example's loss with central finite
// differences for every entry of every tensor, in double precision, using
// parameters from InitParams<double>(config). Relative error per entry is
// |analytic - numeric| / max(|analytic|, |numeric|, 1e-6).
absl::StatusOr<GradCheckReport> GradCheck(const ModelConfig& config,
                                          const EmbeddingStore& store,
                                          const TrainExample& example,
                                          double tolerance,
                                          const GradientTamper& tamper = {});

// Same, for explicit parameters.
absl::StatusOr<GradCheckReport> GradCheckParams(
    const ModelConfig& config, BasicParams<double> params,
    const EmbeddingStore& store, const TrainExample& example, double tolerance,
    const GradientTamper& tamper = {});

}  // namespace recast

#endif  // RECAST_GRAD_CHECK_H_
