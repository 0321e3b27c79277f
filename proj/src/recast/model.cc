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

#include "recast/model.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "recast/random.h"
#include "recast/status.h"

namespace recast {
namespace {

constexpr double kLayerNormEpsilon = 1e-5;

double Logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

struct LayerNormCache {
  std::vector<double> normalized;
  double inv_std = 0.0;
};

template <typename T>
std::vector<double> LayerNorm(const std::vector<double>& x,
                              const Matrix<T>& gain, const Matrix<T>& bias,
                              LayerNormCache& cache) {
  const std::size_t n = x.size();
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  cache.inv_std = 1.0 / std::sqrt(var + kLayerNormEpsilon);
  cache.normalized.resize(n);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    cache.normalized[i] = (x[i] - mean) * cache.inv_std;
    y[i] = static_cast<double>(gain.values[i]) * cache.normalized[i] +
           static_cast<double>(bias.values[i]);
  }
  return y;
}

template <typename T>
std::vector<double> LayerNormBackward(const std::vector<double>& dy,
                                      const Matrix<T>& gain,
                                      const LayerNormCache& cache,
                                      Matrix<double>& dgain,
                                      Matrix<double>& dbias) {
  const std::size_t n = dy.size();
  std::vector<double> dxhat(n);
  double sum_dxhat = 0.0, sum_dxhat_xhat = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dgain.values[i] += dy[i] * cache.normalized[i];
    dbias.values[i] += dy[i];
    dxhat[i] = dy[i] * static_cast<double>(gain.values[i]);
    sum_dxhat += dxhat[i];
    sum_dxhat_xhat += dxhat[i] * cache.normalized[i];
  }
  std::vector<double> dx(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    dx[i] = cache.inv_std * (dxhat[i] - inv_n * sum_dxhat -
                             cache.normalized[i] * inv_n * sum_dxhat_xhat);
  }
  return dx;
}

// Intermediate values of one forward pass. Only the CLS row feeds the
// classifier head, so the post-attention sublayers run on row 0 alone.
struct Activations {
  std::size_t length = 0;                 // n + 1
  std::vector<std::vector<double>> x;     // n word embeddings (E each)
  Matrix<double> h0;                      // L x d, after positional add
  std::vector<Matrix<double>> q, k, v;    // per head, L x dk
  std::vector<Matrix<double>> attention;  // per head, L x L
  std::vector<double> context;            // concatenated heads at row 0 (d)
  LayerNormCache ln1;
  std::vector<double> y1;      // d
  std::vector<double> pre;     // ffn
  std::vector<double> hidden;  // ffn, after ReLU
  LayerNormCache ln2;
  std::vector<double> y2;  // d
  double logit = 0.0;
  double probability = 0.0;
};

template <typename T>
std::vector<double> EmbeddingFor(const EmbeddingStore& store,
                                 const BasicParams<T>& params,
                                 const std::optional<std::size_t>& row) {
  std::vector<double> out(store.dim());
  if (row) {
    const auto values = store.Row(*row);
    for (std::size_t e = 0; e < out.size(); ++e) out[e] = values[e];
  } else {
    for (std::size_t e = 0; e < out.size(); ++e) {
      out[e] = static_cast<double>(params.unk_vector.values[e]);
    }
  }
  return out;
}

template <typename T>
void RunForward(const ModelConfig& config, const BasicParams<T>& params,
                const EmbeddingStore& store, const EncodedWords& words,
                Activations& act) {
  const std::size_t n = words.size();
  const std::size_t length = n + 1;
  const std::size_t d = config.model_dim;
  const std::size_t dk = config.head_dim();
  const std::size_t heads = config.num_heads;
  const std::size_t emb = config.embedding_dim;
  act.length = length;

  act.x.clear();
  act.h0 = Matrix<double>(length, d);
  for (std::size_t j = 0; j < d; ++j) {
    act.h0(0, j) = static_cast<double>(params.cls_vector.values[j]);
  }
  for (std::size_t t = 0; t < n; ++t) {
    act.x.push_back(EmbeddingFor(store, params, words[t]));
    const auto& x = act.x.back();
    for (std::size_t j = 0; j < d; ++j) {
      double sum = 0.0;
      for (std::size_t e = 0; e < emb; ++e) {
        sum += x[e] * static_cast<double>(params.input_projection(e, j));
      }
      act.h0(t + 1, j) = sum;
    }
  }
  for (std::size_t t = 0; t < length; ++t) {
    for (std::size_t j = 0; j < d; ++j) {
      act.h0(t, j) += static_cast<double>(params.positional(t, j));
    }
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(dk));
  act.q.assign(heads, Matrix<double>(length, dk));
  act.k.assign(heads, Matrix<double>(length, dk));
  act.v.assign(heads, Matrix<double>(length, dk));
  act.attention.assign(heads, Matrix<double>(length, length));
  act.context.assign(d, 0.0);
  for (std::size_t h = 0; h < heads; ++h) {
    for (std::size_t t = 0; t < length; ++t) {
      for (std::size_t b = 0; b < dk; ++b) {
        double sq = 0.0, sk = 0.0, sv = 0.0;
        for (std::size_t a = 0; a < d; ++a) {
          const double in = act.h0(t, a);
          sq += in * static_cast<double>(params.query[h](a, b));
          sk += in * static_cast<double>(params.key[h](a, b));
          sv += in * static_cast<double>(params.value[h](a, b));
        }
        act.q[h](t, b) = sq;
        act.k[h](t, b) = sk;
        act.v[h](t, b) = sv;
      }
    }
    for (std::size_t i = 0; i < length; ++i) {
      double max_logit = -INFINITY;
      double* row = act.attention[h].row(i);
      for (std::size_t j = 0; j < length; ++j) {
        double dot = 0.0;
        for (std::size_t b = 0; b < dk; ++b) {
          dot += act.q[h](i, b) * act.k[h](j, b);
        }
        row[j] = dot * scale;
        max_logit = std::max(max_logit, row[j]);
      }
      double total = 0.0;
      for (std::size_t j = 0; j < length; ++j) {
        row[j] = std::exp(row[j] - max_logit);
        total += row[j];
      }
      for (std::size_t j = 0; j < length; ++j) row[j] /= total;
    }
    for (std::size_t b = 0; b < dk; ++b) {
      double sum = 0.0;
      for (std::size_t j = 0; j < length; ++j) {
        sum += act.attention[h](0, j) * act.v[h](j, b);
      }
      act.context[h * dk + b] = sum;
    }
  }

  std::vector<double> residual(d);
  for (std::size_t j = 0; j < d; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      sum += act.context[i] * static_cast<double>(params.output(i, j));
    }
    residual[j] = act.h0(0, j) + sum;
  }
  act.y1 = LayerNorm(residual, params.ln1_gain, params.ln1_bias, act.ln1);

  const std::size_t ffn = config.ffn_dim;
  act.pre.assign(ffn, 0.0);
  act.hidden.assign(ffn, 0.0);
  for (std::size_t i = 0; i < ffn; ++i) {
    double sum = static_cast<double>(params.ffn_in_bias.values[i]);
    for (std::size_t j = 0; j < d; ++j) {
      sum += act.y1[j] * static_cast<double>(params.ffn_in(j, i));
    }
    act.pre[i] = sum;
    act.hidden[i] = sum > 0.0 ? sum : 0.0;
  }
  for (std::size_t j = 0; j < d; ++j) {
    double sum = static_cast<double>(params.ffn_out_bias.values[j]);
    for (std::size_t i = 0; i < ffn; ++i) {
      sum += act.hidden[i] * static_cast<double>(params.ffn_out(i, j));
    }
    residual[j] = act.y1[j] + sum;
  }
  act.y2 = LayerNorm(residual, params.ln2_gain, params.ln2_bias, act.ln2);

  double logit = static_cast<double>(params.head_bias.values[0]);
  for (std::size_t j = 0; j < d; ++j) {
    logit += static_cast<double>(params.head_weight.values[j]) * act.y2[j];
  }
  act.logit = logit;
  act.probability = Logistic(logit);
}

template <typename T>
void RunBackward(const ModelConfig& config, const BasicParams<T>& params,
                 const EncodedWords& words, const Activations& act,
                 double dlogit, Gradients& grads) {
  const std::size_t length = act.length;
  const std::size_t d = config.model_dim;
  const std::size_t dk = config.head_dim();
  const std::size_t ffn = config.ffn_dim;
  const std::size_t emb = config.embedding_dim;

  grads.head_bias.values[0] += dlogit;
  std::vector<double> dy2(d);
  for (std::size_t j = 0; j < d; ++j) {
    grads.head_weight.values[j] += dlogit * act.y2[j];
    dy2[j] = dlogit * static_cast<double>(params.head_weight.values[j]);
  }
  const std::vector<double> dr2 = LayerNormBackward(
      dy2, params.ln2_gain, act.ln2, grads.ln2_gain, grads.ln2_bias);

  std::vector<double> dy1 = dr2;
  std::vector<double> dpre(ffn);
  for (std::size_t i = 0; i < ffn; ++i) {
    double dhidden = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      grads.ffn_out(i, j) += act.hidden[i] * dr2[j];
      dhidden += static_cast<double>(params.ffn_out(i, j)) * dr2[j];
    }
    dpre[i] = act.pre[i] > 0.0 ? dhidden : 0.0;
  }
  for (std::size_t j = 0; j < d; ++j) grads.ffn_out_bias.values[j] += dr2[j];
  for (std::size_t i = 0; i < ffn; ++i) grads.ffn_in_bias.values[i] += dpre[i];
  for (std::size_t j = 0; j < d; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < ffn; ++i) {
      grads.ffn_in(j, i) += act.y1[j] * dpre[i];
      sum += static_cast<double>(params.ffn_in(j, i)) * dpre[i];
    }
    dy1[j] += sum;
  }
  const std::vector<double> dr1 = LayerNormBackward(
      dy1, params.ln1_gain, act.ln1, grads.ln1_gain, grads.ln1_bias);

  Matrix<double> dh0(length, d);
  for (std::size_t j = 0; j < d; ++j) dh0(0, j) += dr1[j];
  std::vector<double> dcontext(d);
  for (std::size_t i = 0; i < d; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      grads.output(i, j) += act.context[i] * dr1[j];
      sum += static_cast<double>(params.output(i, j)) * dr1[j];
    }
    dcontext[i] = sum;
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(dk));
  std::vector<double> dattn(length), dscore(length), dq(dk);
  Matrix<double> dk_rows(length, dk), dv_rows(length, dk);
  for (std::size_t h = 0; h < config.num_heads; ++h) {
    const Matrix<double>& a = act.attention[h];
    const double* dout = dcontext.data() + h * dk;
    double weighted = 0.0;
    for (std::size_t j = 0; j < length; ++j) {
      double dot = 0.0;
      for (std::size_t b = 0; b < dk; ++b) {
        dot += dout[b] * act.v[h](j, b);
        dv_rows(j, b) = a(0, j) * dout[b];
      }
      dattn[j] = dot;
      weighted += a(0, j) * dot;
    }
    std::fill(dq.begin(), dq.end(), 0.0);
    for (std::size_t j = 0; j < length; ++j) {
      dscore[j] = a(0, j) * (dattn[j] - weighted) * scale;
      for (std::size_t b = 0; b < dk; ++b) {
        dq[b] += dscore[j] * act.k[h](j, b);
        dk_rows(j, b) = dscore[j] * act.q[h](0, b);
      }
    }
    for (std::size_t a_idx = 0; a_idx < d; ++a_idx) {
      double sum = 0.0;
      for (std::size_t b = 0; b < dk; ++b) {
        grads.query[h](a_idx, b) += act.h0(0, a_idx) * dq[b];
        sum += static_cast<double>(params.query[h](a_idx, b)) * dq[b];
      }
      dh0(0, a_idx) += sum;
    }
    for (std::size_t j = 0; j < length; ++j) {
      for (std::size_t a_idx = 0; a_idx < d; ++a_idx) {
        double sum = 0.0;
        const double in = act.h0(j, a_idx);
        for (std::size_t b = 0; b < dk; ++b) {
          grads.key[h](a_idx, b) += in * dk_rows(j, b);
          grads.value[h](a_idx, b) += in * dv_rows(j, b);
          sum += static_cast<double>(params.key[h](a_idx, b)) * dk_rows(j, b) +
                 static_cast<double>(params.value[h](a_idx, b)) * dv_rows(j, b);
        }
        dh0(j, a_idx) += sum;
      }
    }
  }

  for (std::size_t t = 0; t < length; ++t) {
    for (std::size_t j = 0; j < d; ++j) grads.positional(t, j) += dh0(t, j);
  }
  for (std::size_t j = 0; j < d; ++j) grads.cls_vector.values[j] += dh0(0, j);
  for (std::size_t t = 1; t < length; ++t) {
    const auto& x = act.x[t - 1];
    const double* dp = dh0.row(t);
    for (std::size_t e = 0; e < emb; ++e) {
      double sum = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        grads.input_projection(e, j) += x[e] * dp[j];
        sum += static_cast<double>(params.input_projection(e, j)) * dp[j];
      }
      if (!words[t - 1]) grads.unk_vector.values[e] += sum;
    }
  }
}

template <typename T>
bool ShapesMatch(const ModelConfig& config, const BasicParams<T>& params) {
  const auto expected = BasicParams<T>::Zeros(config);
  bool ok = params.query.size() == expected.query.size() &&
            params.key.size() == expected.key.size() &&
            params.value.size() == expected.value.size();
  if (!ok) return false;
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  expected.ForEachTensor([&](const std::string&, const Matrix<T>& m) {
    shapes.emplace_back(m.rows, m.cols);
  });
  std::size_t i = 0;
  params.ForEachTensor([&](const std::string&, const Matrix<T>& m) {
    ok = ok && m.rows == shapes[i].first && m.cols == shapes[i].second &&
         m.values.size() == m.rows * m.cols;
    ++i;
  });
  return ok;
}

}  // namespace

absl::Status ModelConfig::Validate() const {
  if (model_dim < 1 || num_heads < 1 || ffn_dim < 1 || max_len < 1 ||
      embedding_dim < 1) {
    return MakeError(ErrorKind::kInvalidArgument,
                     "model config counts must all be >= 1");
  }
  if (model_dim % num_heads != 0) {
    return MakeError(
        ErrorKind::kInvalidArgument,
        absl::StrCat("model_dim ", model_dim, " is not divisible by num_heads ",
                     num_heads));
  }
  return absl::OkStatus();
}

template <typename T>
BasicParams<T> BasicParams<T>::Zeros(const ModelConfig& config) {
  const std::size_t d = config.model_dim;
  const std::size_t dk = config.head_dim();
  BasicParams p;
  p.input_projection = Matrix<T>(config.embedding_dim, d);
  p.cls_vector = Matrix<T>(1, d);
  p.positional = Matrix<T>(config.max_len + 1, d);
  p.query.assign(config.num_heads, Matrix<T>(d, dk));
  p.key.assign(config.num_heads, Matrix<T>(d, dk));
  p.value.assign(config.num_heads, Matrix<T>(d, dk));
  p.output = Matrix<T>(d, d);
  p.ln1_gain = Matrix<T>(1, d);
  p.ln1_bias = Matrix<T>(1, d);
  p.ffn_in = Matrix<T>(d, config.ffn_dim);
  p.ffn_in_bias = Matrix<T>(1, config.ffn_dim);
  p.ffn_out = Matrix<T>(config.ffn_dim, d);
  p.ffn_out_bias = Matrix<T>(1, d);
  p.ln2_gain = Matrix<T>(1, d);
  p.ln2_bias = Matrix<T>(1, d);
  p.head_weight = Matrix<T>(1, d);
  p.head_bias = Matrix<T>(1, 1);
  p.unk_vector = Matrix<T>(1, config.embedding_dim);
  return p;
}

template <typename T>
absl::StatusOr<BasicParams<T>> InitParams(const ModelConfig& config) {
  RECAST_RETURN_IF_ERROR(config.Validate());
  BasicParams<T> params = BasicParams<T>::Zeros(config);
  std::fill(params.ln1_gain.values.begin(), params.ln1_gain.values.end(), T(1));
  std::fill(params.ln2_gain.values.begin(), params.ln2_gain.values.end(), T(1));

  std::mt19937_64 rng(config.seed);
  auto xavier = [&rng](Matrix<T>& m) {
    const double limit = std::sqrt(6.0 / static_cast<double>(m.rows + m.cols));
    for (T& value : m.values) {
      value = static_cast<T>((2.0 * UniformUnit(rng) - 1.0) * limit);
    }
  };
  params.ForEachTensor([&](const std::string& name, Matrix<T>& m) {
    const bool fixed = name.starts_with("ln") || name == "b_1" ||
                       name == "b_2" || name == "b_out";
    if (!fixed) xavier(m);
  });
  return params;
}

EncodedWords EncodeWords(const EmbeddingStore& store,
                         const std::vector<TokenSpan>& words,
                         std::size_t max_len) {
  EncodedWords out;
  for (const auto& span : words) {
    if (span.kind != TokenKind::kWord) continue;
    if (out.size() == max_len) break;
    auto row = store.IndexOf(span.text);
    if (!row) row = store.IndexOf(ToLowerWord(span.text));
    out.push_back(row);
  }
  return out;
}

absl::Status CheckShapes(const ModelConfig& config,
                         const EmbeddingStore& store) {
  RECAST_RETURN_IF_ERROR(config.Validate());
  if (config.embedding_dim != store.dim()) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     absl::StrCat("model expects ", config.embedding_dim,
                                  "-dim embeddings, store has ", store.dim()));
  }
  return absl::OkStatus();
}

template <typename T>
ForwardOutput ForwardEncoded(const ModelConfig& config,
                             const BasicParams<T>& params,
                             const EmbeddingStore& store,
                             const EncodedWords& words) {
  Activations act;
  RunForward(config, params, store, words, act);
  return {act.probability, act.logit, std::move(act.attention)};
}

template <typename T>
absl::StatusOr<ForwardOutput> Forward(const ModelConfig& config,
                                      const BasicParams<T>& params,
                                      const EmbeddingStore& store,
                                      const std::vector<TokenSpan>& spans) {
  RECAST_RETURN_IF_ERROR(CheckShapes(config, store));
  if (!ShapesMatch(config, params)) {
    return MakeError(ErrorKind::kDimensionMismatch,
                     "parameter shapes do not match the model config");
  }
  const EncodedWords words = EncodeWords(store, spans, config.max_len);
  if (words.empty()) {
    return MakeError(ErrorKind::kNoWords, "input contains no words");
  }
  return ForwardEncoded(config, params, store, words);
}

template <typename T>
double LossAndGradient(const ModelConfig& config, const BasicParams<T>& params,
                       const EmbeddingStore& store, const EncodedWords& words,
                       int label, Gradients& grads) {
  Activations act;
  RunForward(config, params, store, words, act);
  RunBackward(config, params, words, act,
              act.probability - static_cast<double>(label), grads);
  return BinaryCrossEntropy(act.logit, label);
}

template <typename T>
double Loss(const ModelConfig& config, const BasicParams<T>& params,
            const EmbeddingStore& store, const EncodedWords& words, int label) {
  Activations act;
  RunForward(config, params, store, words, act);
  return BinaryCrossEntropy(act.logit, label);
}

double BinaryCrossEntropy(double logit, int label) {
  return Softplus(logit) - static_cast<double>(label) * logit;
}

int ScoreFromProbability(double probability) {
  const double scaled = std::floor(100.0 * probability + 0.5);
  return static_cast<int>(std::clamp(scaled, 0.0, 100.0));
}

absl::StatusOr<ScoreResult> Score(const Model& model,
                                  const EmbeddingStore& store,
                                  std::string_view text) {
  ScoreResult result;
  result.spans = Tokenize(text);
  if (result.spans.empty()) {
    return MakeError(ErrorKind::kEmptyText, "text is empty");
  }
  const std::vector<TokenSpan> words = WordsOnly(result.spans);
  if (words.empty()) {
    return MakeError(ErrorKind::kNoWords, "text contains no words");
  }
  RECAST_ASSIGN_OR_RETURN(ForwardOutput out, Forward(model.config, model.params,
                                                     store, result.spans));
  result.probability = out.probability;
  result.score = ScoreFromProbability(out.probability);

  const std::size_t used = out.head_attention.front().rows - 1;
  std::vector<double> weights(words.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < used; ++i) {
    double mean = 0.0;
    for (const auto& head : out.head_attention) mean += head(0, i + 1);
    weights[i] = mean / static_cast<double>(out.head_attention.size());
    total += weights[i];
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    double w = 0.0;
    if (i < used) {
      w = total > 0.0 ? weights[i] / total : 1.0 / static_cast<double>(used);
    }
    result.word_attention.push_back({i, w});
  }
  return result;
}

template struct BasicParams<float>;
template struct BasicParams<double>;
template absl::StatusOr<BasicParams<float>> InitParams(const ModelConfig&);
template absl::StatusOr<BasicParams<double>> InitParams(const ModelConfig&);
template ForwardOutput ForwardEncoded(const ModelConfig&,
                                      const BasicParams<float>&,
                                      const EmbeddingStore&,
                                      const EncodedWords&);
template ForwardOutput ForwardEncoded(const ModelConfig&,
                                      const BasicParams<double>&,
                                      const EmbeddingStore&,
                                      const EncodedWords&);
template absl::StatusOr<ForwardOutput> Forward(const ModelConfig&,
                                               const BasicParams<float>&,
                                               const EmbeddingStore&,
                                               const std::vector<TokenSpan>&);
template absl::StatusOr<ForwardOutput> Forward(const ModelConfig&,
                                               const BasicParams<double>&,
                                               const EmbeddingStore&,
                                               const std::vector<TokenSpan>&);
template double LossAndGradient(const ModelConfig&, const BasicParams<float>&,
                                const EmbeddingStore&, const EncodedWords&, int,
                                Gradients&);
template double LossAndGradient(const ModelConfig&, const BasicParams<double>&,
                                const EmbeddingStore&, const EncodedWords&, int,
                                Gradients&);
template double Loss(const ModelConfig&, const BasicParams<float>&,
                     const EmbeddingStore&, const EncodedWords&, int);
template double Loss(const ModelConfig&, const BasicParams<double>&,
                     const EmbeddingStore&, const EncodedWords&, int);

}  // namespace recast
