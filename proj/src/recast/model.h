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

#ifndef RECAST_MODEL_H_
#define RECAST_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "recast/embedding_store.h"
#include "recast/text_pipeline.h"

namespace recast {

struct ModelConfig {
  std::size_t model_dim = 32;
  std::size_t num_heads = 2;
  std::size_t ffn_dim = 64;
  std::size_t max_len = 64;  // words; the CLS position is extra
  std::uint64_t seed = 0;
  std::size_t embedding_dim = 0;

  std::size_t head_dim() const { return model_dim / num_heads; }
  absl::Status Validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

template <typename T>
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> values;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c) {}

  T& operator()(std::size_t r, std::size_t c) { return values[r * cols + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return values[r * cols + c];
  }
  T* row(std::size_t r) { return values.data() + r * cols; }
  const T* row(std::size_t r) const { return values.data() + r * cols; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

// Learnable tensors of the one-layer encoder. Vectors are stored as 1 x n
// matrices so every tensor can be visited uniformly.
//
// ForEachTensor defines the canonical tensor order, which is also the order
// in the model file:
//   input_projection (E x d), cls_vector (1 x d), positional (max_len+1 x d),
//   for each head h: W_Q[h], W_K[h], W_V[h] (d x d/heads),
//   W_O (d x d), ln1_gain, ln1_bias (1 x d), W_1 (d x ffn), b_1 (1 x ffn),
//   W_2 (ffn x d), b_2 (1 x d), ln2_gain, ln2_bias (1 x d), w_out (1 x d),
//   b_out (1 x 1), unk_vector (1 x E).
template <typename T>
struct BasicParams {
  Matrix<T> input_projection;
  Matrix<T> cls_vector;
  Matrix<T> positional;
  std::vector<Matrix<T>> query;
  std::vector<Matrix<T>> key;
  std::vector<Matrix<T>> value;
  Matrix<T> output;
  Matrix<T> ln1_gain;
  Matrix<T> ln1_bias;
  Matrix<T> ffn_in;
  Matrix<T> ffn_in_bias;
  Matrix<T> ffn_out;
  Matrix<T> ffn_out_bias;
  Matrix<T> ln2_gain;
  Matrix<T> ln2_bias;
  Matrix<T> head_weight;
  Matrix<T> head_bias;
  Matrix<T> unk_vector;

  // All-zero tensors shaped for `config`.
  static BasicParams Zeros(const ModelConfig& config);

  template <typename F>
  void ForEachTensor(F&& f) {
    Visit(*this, f);
  }
  template <typename F>
  void ForEachTensor(F&& f) const {
    Visit(*this, f);
  }

  template <typename U>
  BasicParams<U> Cast() const {
    BasicParams<U> out;
    auto convert = [](const Matrix<T>& m) {
      Matrix<U> r(m.rows, m.cols);
      for (std::size_t i = 0; i < m.values.size(); ++i) {
        r.values[i] = static_cast<U>(m.values[i]);
      }
      return r;
    };
    out.input_projection = convert(input_projection);
    out.cls_vector = convert(cls_vector);
    out.positional = convert(positional);
    for (const auto& m : query) out.query.push_back(convert(m));
    for (const auto& m : key) out.key.push_back(convert(m));
    for (const auto& m : value) out.value.push_back(convert(m));
    out.output = convert(output);
    out.ln1_gain = convert(ln1_gain);
    out.ln1_bias = convert(ln1_bias);
    out.ffn_in = convert(ffn_in);
    out.ffn_in_bias = convert(ffn_in_bias);
    out.ffn_out = convert(ffn_out);
    out.ffn_out_bias = convert(ffn_out_bias);
    out.ln2_gain = convert(ln2_gain);
    out.ln2_bias = convert(ln2_bias);
    out.head_weight = convert(head_weight);
    out.head_bias = convert(head_bias);
    out.unk_vector = convert(unk_vector);
    return out;
  }

  friend bool operator==(const BasicParams&, const BasicParams&) = default;

 private:
  template <typename Self, typename F>
  static void Visit(Self& self, F& f) {
    f(std::string("input_projection"), self.input_projection);
    f(std::string("cls_vector"), self.cls_vector);
    f(std::string("positional"), self.positional);
    for (std::size_t h = 0; h < self.query.size(); ++h) {
      f(absl::StrCat("W_Q[", h, "]"), self.query[h]);
      f(absl::StrCat("W_K[", h, "]"), self.key[h]);
      f(absl::StrCat("W_V[", h, "]"), self.value[h]);
    }
    f(std::string("W_O"), self.output);
    f(std::string("ln1_gain"), self.ln1_gain);
    f(std::string("ln1_bias"), self.ln1_bias);
    f(std::string("W_1"), self.ffn_in);
    f(std::string("b_1"), self.ffn_in_bias);
    f(std::string("W_2"), self.ffn_out);
    f(std::string("b_2"), self.ffn_out_bias);
    f(std::string("ln2_gain"), self.ln2_gain);
    f(std::string("ln2_bias"), self.ln2_bias);
    f(std::string("w_out"), self.head_weight);
    f(std::string("b_out"), self.head_bias);
    f(std::string("unk_vector"), self.unk_vector);
  }
};

// Stored parameters are 32-bit; all arithmetic on them runs in double.
using ModelParams = BasicParams<float>;
using Gradients = BasicParams<double>;

struct Model {
  ModelConfig config;
  ModelParams params;
};

// Xavier/Glorot uniform draws from std::mt19937_64 seeded with config.seed,
// consumed tensor by tensor in canonical order. Layer-norm gains are 1;
// every bias (b_1, b_2, b_out, layer-norm biases) starts at 0.
template <typename T>
absl::StatusOr<BasicParams<T>> InitParams(const ModelConfig& config);

// Store row for each word (exact match, then lowercase), nullopt for OOV.
// Only the first `max_len` words are kept.
using EncodedWords = std::vector<std::optional<std::size_t>>;
EncodedWords EncodeWords(const EmbeddingStore& store,
                         const std::vector<TokenSpan>& words,
                         std::size_t max_len);

struct ForwardOutput {
  double probability = 0.0;
  double logit = 0.0;
  // One (n+1) x (n+1) row-stochastic matrix per head; index 0 is CLS.
  std::vector<Matrix<double>> head_attention;
};

absl::Status CheckShapes(const ModelConfig& config,
                         const EmbeddingStore& store);

template <typename T>
absl::StatusOr<ForwardOutput> Forward(const ModelConfig& config,
                                      const BasicParams<T>& params,
                                      const EmbeddingStore& store,
                                      const std::vector<TokenSpan>& spans);

template <typename T>
ForwardOutput ForwardEncoded(const ModelConfig& config,
                             const BasicParams<T>& params,
                             const EmbeddingStore& store,
                             const EncodedWords& words);

// Binary cross-entropy of one example; adds d(loss)/d(param) into `grads`.
// `words` must be non-empty and already truncated.
template <typename T>
double LossAndGradient(const ModelConfig& config, const BasicParams<T>& params,
                       const EmbeddingStore& store, const EncodedWords& words,
                       int label, Gradients& grads);

// Computed from the logit to stay finite for saturated probabilities.
double BinaryCrossEntropy(double logit, int label);

template <typename T>
double Loss(const ModelConfig& config, const BasicParams<T>& params,
            const EmbeddingStore& store, const EncodedWords& words, int label);

struct WordAttention {
  std::size_t word_index = 0;
  double weight = 0.0;
};

struct ScoreResult {
  int score = 0;  // round-half-up of 100 * probability
  double probability = 0.0;
  std::vector<WordAttention> word_attention;  // one per word span
  std::vector<TokenSpan> spans;
};

int ScoreFromProbability(double probability);

// Per-word weights are the CLS query row averaged over heads with the CLS
// column dropped and the rest renormalized. Words past max_len get 0.
absl::StatusOr<ScoreResult> Score(const Model& model,
                                  const EmbeddingStore& store,
                                  std::string_view text);

}  // namespace recast

#endif  // RECAST_MODEL_H_
