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

// Writes the small word2vec text file bundled under data/. Each pejorative
// sits next to its mild counterpart, displaced along a shared toxicity axis,
// so the mild word is its nearest neighbor. Everything else is a random
// direction.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "recast/embedding_store.h"
#include "recast/file_util.h"
#include "recast/lexicon.h"
#include "recast/random.h"

namespace {

using Vec = std::vector<double>;

// Box-Muller over UniformUnit, so the output does not depend on the standard
// library's normal_distribution.
double Gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - recast::UniformUnit(rng);
  const double u2 = recast::UniformUnit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Vec RandomUnit(std::size_t dim, std::mt19937_64& rng) {
  Vec v(dim);
  double norm = 0.0;
  for (double& x : v) {
    x = Gaussian(rng);
    norm += x * x;
  }
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

Vec Mix(const Vec& center, const Vec& axis, double along, double noise,
        std::mt19937_64& rng) {
  Vec v(center.size());
  const double scale = noise / std::sqrt(static_cast<double>(center.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = center[i] + along * axis[i] + scale * Gaussian(rng);
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the bundled demo word embeddings"};
  std::string out;
  std::uint64_t seed = 2026;
  std::size_t dim = 24;
  app.add_option("--out", out, "Output path (word2vec text)")->required();
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--dim", dim, "Vector dimension")->check(CLI::Range(4, 1024));
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(seed);
  const Vec toxic_axis = RandomUnit(dim, rng);

  std::vector<std::string> words;
  std::vector<float> values;
  std::set<std::string> seen;
  const auto add = [&](std::string_view word, const Vec& v) {
    if (!seen.insert(std::string(word)).second) return;
    words.emplace_back(word);
    for (double x : v) values.push_back(static_cast<float>(x));
  };

  for (const auto pairs :
       {recast::lexicon::AdjectivePairs(), recast::lexicon::NounPairs()}) {
    for (const auto& pair : pairs) {
      const Vec center = RandomUnit(dim, rng);
      add(pair.pejorative, Mix(center, toxic_axis, 0.45, 0.08, rng));
      add(pair.mild, Mix(center, toxic_axis, -0.15, 0.08, rng));
    }
  }
  for (const auto list :
       {recast::lexicon::NeutralAdjectives(), recast::lexicon::Subjects(),
        recast::lexicon::FunctionWords()}) {
    for (std::string_view word : list) add(word, RandomUnit(dim, rng));
  }

  auto store = recast::EmbeddingStore::Create(words, values, dim);
  if (!store.ok()) {
    std::cerr << store.status().message() << "\n";
    return 2;
  }
  if (auto status =
          recast::WriteFile(out, recast::SerializeWord2VecText(*store));
      !status.ok()) {
    std::cerr << status.message() << "\n";
    return 3;
  }
  std::cout << "wrote " << store->size() << " words x " << dim << " to " << out
            << "\n";
  return 0;
}
