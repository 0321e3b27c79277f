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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "recast/embedding_store.h"
#include "recast/status.h"
#include "recast/text_pipeline.h"
#include "test_util.h"

namespace recast {
namespace {

const EmbeddingStore& ToyStore() {
  static const EmbeddingStore* store = new EmbeddingStore(
      *LoadEmbeddings(testing::DataPath("toy_embeddings.txt")));
  return *store;
}

Model MakeModel(std::uint64_t seed, ModelConfig config = {}) {
  config.seed = seed;
  config.embedding_dim = ToyStore().dim();
  auto params = InitParams<float>(config);
  EXPECT_TRUE(params.ok()) << params.status();
  return {config, *std::move(params)};
}

using Rows = std::vector<std::vector<double>>;

Rows MatMul(const Rows& a, const Matrix<double>& w) {
  Rows out(a.size(), std::vector<double>(w.cols, 0.0));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < w.cols; ++c) {
      double sum = 0.0;
      for (std::size_t i = 0; i < w.rows; ++i) sum += a[r][i] * w(i, c);
      out[r][c] = sum;
    }
  }
  return out;
}

std::vector<double> Norm(const std::vector<double>& x, const Matrix<double>& g,
                         const Matrix<double>& b) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(x.size());
  const double inv = 1.0 / std::sqrt(var + 1e-5);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = g.values[i] * ((x[i] - mean) * inv) + b.values[i];
  }
  return y;
}

struct OracleOutput {
  double probability;
  std::vector<Rows> attention;
};

// A second, straight-line forward pass written from the architecture
// description: it evaluates every sequence position through every sublayer
// (the library only carries the CLS row past attention) and multiplies by
// 1/sqrt(d_k) exactly like the library so results can be compared bit for
// bit.
OracleOutput OracleForward(const Model& model, const EmbeddingStore& store,
                           const std::string& text) {
  const ModelConfig& c = model.config;
  const BasicParams<double> p = model.params.Cast<double>();
  std::vector<std::vector<double>> embedded;
  for (const TokenSpan& w : WordsOnly(Tokenize(text))) {
    if (embedded.size() == c.max_len) break;
    auto row = store.Lookup(w.text);
    if (!row) row = store.Lookup(ToLowerWord(w.text));
    std::vector<double> x(c.embedding_dim);
    for (std::size_t e = 0; e < x.size(); ++e) {
      x[e] = row ? static_cast<double>((*row)[e]) : p.unk_vector.values[e];
    }
    embedded.push_back(x);
  }

  Rows h = MatMul(embedded, p.input_projection);
  h.insert(h.begin(), std::vector<double>(p.cls_vector.values));
  for (std::size_t t = 0; t < h.size(); ++t) {
    for (std::size_t j = 0; j < c.model_dim; ++j) h[t][j] += p.positional(t, j);
  }

  const std::size_t length = h.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(c.head_dim()));
  Rows concat(length, std::vector<double>(c.model_dim));
  std::vector<Rows> attention;
  for (std::size_t head = 0; head < c.num_heads; ++head) {
    const Rows q = MatMul(h, p.query[head]);
    const Rows k = MatMul(h, p.key[head]);
    const Rows v = MatMul(h, p.value[head]);
    Rows a(length, std::vector<double>(length));
    for (std::size_t i = 0; i < length; ++i) {
      double top = -INFINITY;
      for (std::size_t j = 0; j < length; ++j) {
        double dot = 0.0;
        for (std::size_t b = 0; b < c.head_dim(); ++b) dot += q[i][b] * k[j][b];
        a[i][j] = dot * scale;
        top = std::max(top, a[i][j]);
      }
      double z = 0.0;
      for (double& s : a[i]) z += (s = std::exp(s - top));
      for (double& s : a[i]) s /= z;
      for (std::size_t b = 0; b < c.head_dim(); ++b) {
        double sum = 0.0;
        for (std::size_t j = 0; j < length; ++j) sum += a[i][j] * v[j][b];
        concat[i][head * c.head_dim() + b] = sum;
      }
    }
    attention.push_back(a);
  }

  const Rows projected = MatMul(concat, p.output);
  Rows out(length);
  for (std::size_t t = 0; t < length; ++t) {
    std::vector<double> r(c.model_dim);
    for (std::size_t j = 0; j < c.model_dim; ++j)
      r[j] = h[t][j] + projected[t][j];
    const std::vector<double> y1 = Norm(r, p.ln1_gain, p.ln1_bias);
    std::vector<double> hidden(c.ffn_dim);
    for (std::size_t i = 0; i < c.ffn_dim; ++i) {
      double s = p.ffn_in_bias.values[i];
      for (std::size_t j = 0; j < c.model_dim; ++j) s += y1[j] * p.ffn_in(j, i);
      hidden[i] = std::max(s, 0.0);
    }
    for (std::size_t j = 0; j < c.model_dim; ++j) {
      double s = p.ffn_out_bias.values[j];
      for (std::size_t i = 0; i < c.ffn_dim; ++i)
        s += hidden[i] * p.ffn_out(i, j);
      r[j] = y1[j] + s;
    }
    out[t] = Norm(r, p.ln2_gain, p.ln2_bias);
  }

  double logit = p.head_bias.values[0];
  for (std::size_t j = 0; j < c.model_dim; ++j) {
    logit += p.head_weight.values[j] * out[0][j];
  }
  const double probability = logit >= 0
                                 ? 1.0 / (1.0 + std::exp(-logit))
                                 : std::exp(logit) / (1.0 + std::exp(logit));
  return {probability, attention};
}

TEST(InitTest, DeterministicPerSeed) {
  EXPECT_EQ(MakeModel(7).params, MakeModel(7).params);
  EXPECT_FALSE(MakeModel(1).params == MakeModel(2).params);
}

TEST(InitTest, RejectsIndivisibleHeads) {
  ModelConfig config;
  config.model_dim = 33;
  config.num_heads = 2;
  config.embedding_dim = 4;
  const auto params = InitParams<float>(config);
  EXPECT_EQ(GetErrorKind(params.status()), ErrorKind::kInvalidArgument);
  config.model_dim = 32;
  config.embedding_dim = 0;
  EXPECT_FALSE(InitParams<float>(config).ok());
}

TEST(InitTest, XavierRangesAndFixedTensors) {
  const Model model = MakeModel(3);
  model.params.ForEachTensor([](const std::string& name,
                                const Matrix<float>& m) {
    const double limit = std::sqrt(6.0 / static_cast<double>(m.rows + m.cols));
    for (float v : m.values) {
      if (name == "ln1_gain" || name == "ln2_gain") {
        EXPECT_EQ(v, 1.0f) << name;
      } else if (name == "ln1_bias" || name == "ln2_bias" || name == "b_1" ||
                 name == "b_2" || name == "b_out") {
        EXPECT_EQ(v, 0.0f) << name;
      } else {
        EXPECT_LE(std::abs(v), limit) << name;
      }
    }
  });
}

TEST(ForwardTest, MatchesIndependentOracleExactly) {
  const Model model = MakeModel(42);
  const auto out =
      Forward(model.config, model.params, ToyStore(), Tokenize("a b"));
  ASSERT_TRUE(out.ok()) << out.status();
  const OracleOutput oracle = OracleForward(model, ToyStore(), "a b");
  EXPECT_EQ(out->probability, oracle.probability);
  ASSERT_EQ(out->head_attention.size(), oracle.attention.size());
  for (std::size_t h = 0; h < oracle.attention.size(); ++h) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_EQ(out->head_attention[h](i, j), oracle.attention[h][i][j]);
      }
    }
  }
}

TEST(ForwardTest, MatchesOracleOnVariedInputsAndConfigs) {
  const char* texts[] = {"this is an idiotic video", "Silly!", "zzz a QQQ b",
                         "A B a b a b", "video"};
  std::uint64_t seed = 100;
  for (std::size_t heads : {1, 2, 4}) {
    for (const char* text : texts) {
      ModelConfig config;
      config.model_dim = 8;
      config.num_heads = heads;
      config.ffn_dim = 5;
      config.max_len = 4;
      const Model model = MakeModel(seed++, config);
      const auto out =
          Forward(model.config, model.params, ToyStore(), Tokenize(text));
      ASSERT_TRUE(out.ok());
      EXPECT_EQ(out->probability,
                OracleForward(model, ToyStore(), text).probability)
          << text;
    }
  }
}

TEST(ForwardTest, ProbabilityStrictlyInsideUnitInterval) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Model model = MakeModel(seed);
    const auto out = Forward(model.config, model.params, ToyStore(),
                             Tokenize("this is an idiotic video"));
    ASSERT_TRUE(out.ok());
    EXPECT_GT(out->probability, 0.0);
    EXPECT_LT(out->probability, 1.0);
  }
}

TEST(ForwardTest, EqualQueriesAndKeysGiveUniformAttention) {
  Model model = MakeModel(5);
  for (auto& m : model.params.query)
    std::fill(m.values.begin(), m.values.end(), 0.0f);
  for (auto& m : model.params.key)
    std::fill(m.values.begin(), m.values.end(), 0.0f);
  const auto out = Forward(model.config, model.params, ToyStore(),
                           Tokenize("this is an idiotic video"));
  ASSERT_TRUE(out.ok());
  for (const auto& head : out->head_attention) {
    for (double a : head.values) EXPECT_NEAR(a, 1.0 / 6.0, 1e-15);
  }
}

TEST(ForwardTest, Errors) {
  const Model model = MakeModel(1);
  EXPECT_EQ(GetErrorKind(
                Forward(model.config, model.params, ToyStore(), Tokenize("!!!"))
                    .status()),
            ErrorKind::kNoWords);
  const EmbeddingStore wide = *ParseWord2VecText("1 3\nx 1 2 3\n");
  EXPECT_EQ(
      GetErrorKind(
          Forward(model.config, model.params, wide, Tokenize("x")).status()),
      ErrorKind::kDimensionMismatch);
  ModelParams broken = model.params;
  broken.output = Matrix<float>(1, 1);
  EXPECT_EQ(
      GetErrorKind(
          Forward(model.config, broken, ToyStore(), Tokenize("a")).status()),
      ErrorKind::kDimensionMismatch);
}

TEST(EncodeWordsTest, ExactThenLowercaseThenUnknown) {
  const EncodedWords words =
      EncodeWords(ToyStore(), Tokenize("Idiotic, VIDEO zzz a"), 64);
  ASSERT_EQ(words.size(), 4u);
  EXPECT_EQ(words[0], ToyStore().IndexOf("idiotic"));
  EXPECT_EQ(words[1], ToyStore().IndexOf("video"));
  EXPECT_EQ(words[2], std::nullopt);
  EXPECT_EQ(words[3], ToyStore().IndexOf("a"));
  EXPECT_EQ(EncodeWords(ToyStore(), Tokenize("a b a b"), 3).size(), 3u);
}

TEST(ForwardTest, UnknownWordsUseLearnedVector) {
  Model model = MakeModel(9);
  const auto before = Score(model, ToyStore(), "zzz video");
  const auto known_before = Score(model, ToyStore(), "a video");
  model.params.unk_vector.values[0] += 0.5f;
  const auto after = Score(model, ToyStore(), "zzz video");
  const auto known_after = Score(model, ToyStore(), "a video");
  EXPECT_NE(before->probability, after->probability);
  EXPECT_EQ(known_before->probability, known_after->probability);
}

TEST(ScoreTest, Errors) {
  const Model model = MakeModel(1);
  EXPECT_EQ(GetErrorKind(Score(model, ToyStore(), "").status()),
            ErrorKind::kEmptyText);
  EXPECT_EQ(GetErrorKind(Score(model, ToyStore(), "   \n").status()),
            ErrorKind::kEmptyText);
  EXPECT_EQ(GetErrorKind(Score(model, ToyStore(), "!!!").status()),
            ErrorKind::kNoWords);
}

TEST(ScoreTest, SingleWordGetsAllAttention) {
  const auto result = Score(MakeModel(1), ToyStore(), "video!");
  ASSERT_TRUE(result.ok());
  ASSERT_EQ(result->word_attention.size(), 1u);
  EXPECT_EQ(result->word_attention[0].word_index, 0u);
  EXPECT_EQ(result->word_attention[0].weight, 1.0);
}

TEST(ScoreTest, ScoreFromProbabilityRoundsHalfUp) {
  EXPECT_EQ(ScoreFromProbability(0.0), 0);
  EXPECT_EQ(ScoreFromProbability(0.004999), 0);
  EXPECT_EQ(ScoreFromProbability(0.125), 13);
  EXPECT_EQ(ScoreFromProbability(0.5), 50);
  EXPECT_EQ(ScoreFromProbability(0.995), 100);
  EXPECT_EQ(ScoreFromProbability(1.0), 100);
}

TEST(ScoreTest, AttentionIsMeanOverHeadsOfClsRowRenormalized) {
  const Model model = MakeModel(21);
  const std::string text = "this is an idiotic video";
  const auto result = Score(model, ToyStore(), text);
  const OracleOutput oracle = OracleForward(model, ToyStore(), text);
  ASSERT_TRUE(result.ok());
  std::vector<double> mean(5, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    for (const Rows& head : oracle.attention) mean[i] += head[0][i + 1];
    mean[i] /= static_cast<double>(oracle.attention.size());
    total += mean[i];
  }
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(result->word_attention[i].weight, mean[i] / total, 1e-15);
  }
}

// Random texts over the toy vocabulary plus OOV words and punctuation.
std::string RandomText(std::mt19937_64& rng, std::size_t max_words) {
  static const char* kTokens[] = {"this",  "is",  "an", "idiotic", "Video",
                                  "SILLY", "zzz", "a",  "b",       "qux"};
  static const char* kGlue[] = {" ", " ", "  ", ", ", "! ", " - "};
  std::uniform_int_distribution<std::size_t> count(1, max_words);
  std::uniform_int_distribution<std::size_t> token(0, std::size(kTokens) - 1);
  std::uniform_int_distribution<std::size_t> glue(0, std::size(kGlue) - 1);
  std::string text;
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) text += kGlue[glue(rng)];
    text += kTokens[token(rng)];
  }
  return text;
}

TEST(ScorePropertyTest, NormalizationAndCoupling) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    ModelConfig config;
    config.model_dim = 8;
    config.num_heads = 1 + trial % 2;
    config.ffn_dim = 6;
    config.max_len = 1 + trial % 12;
    const Model model = MakeModel(static_cast<std::uint64_t>(trial), config);
    const std::string text = RandomText(rng, 16);

    const auto forward =
        Forward(model.config, model.params, ToyStore(), Tokenize(text));
    ASSERT_TRUE(forward.ok());
    for (const auto& head : forward->head_attention) {
      for (std::size_t i = 0; i < head.rows; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < head.cols; ++j) sum += head(i, j);
        EXPECT_NEAR(sum, 1.0, 1e-6);
      }
    }

    const auto result = Score(model, ToyStore(), text);
    ASSERT_TRUE(result.ok());
    EXPECT_EQ(result->score,
              static_cast<int>(std::floor(100.0 * result->probability + 0.5)));
    double sum = 0.0;
    for (const auto& w : result->word_attention) {
      EXPECT_GE(w.weight, 0.0);
      EXPECT_LE(w.weight, 1.0);
      sum += w.weight;
    }
    EXPECT_NEAR(sum, 1.0, 1e-6);
    EXPECT_EQ(result->word_attention.size(), WordsOnly(result->spans).size());
  }
}

TEST(ScorePropertyTest, InputsPastMaxLenScoreLikeTheirPrefix) {
  std::mt19937_64 rng(78);
  ModelConfig config;
  config.model_dim = 8;
  config.ffn_dim = 6;
  config.max_len = 4;
  const Model model = MakeModel(31, config);
  for (int trial = 0; trial < 100; ++trial) {
    const std::string text = RandomText(rng, 12);
    const auto words = WordsOnly(Tokenize(text));
    if (words.size() <= config.max_len) continue;
    const std::string prefix =
        text.substr(0, words[config.max_len - 1].byte_end);
    const auto full = Score(model, ToyStore(), text);
    const auto cut = Score(model, ToyStore(), prefix);
    ASSERT_TRUE(full.ok() && cut.ok());
    EXPECT_EQ(full->probability, cut->probability) << text;
    for (std::size_t i = 0; i < words.size(); ++i) {
      const double expected =
          i < config.max_len ? cut->word_attention[i].weight : 0.0;
      EXPECT_EQ(full->word_attention[i].weight, expected);
    }
  }
}

}  // namespace
}  // namespace recast
