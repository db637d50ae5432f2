// Copyright 2026 The DataCollab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment configuration and its flat "key = value" text format.
//
//   # comment
//   dataset = mnist
//   parties = 4
//   epsilon_grid = 0,0.0001,0.001
//
// Blank lines and '#' comments are ignored; unknown keys and malformed
// values are FormatErrors. Serialize() writes every key, with doubles at 17
// significant digits, so Parse(Serialize(c)) == c.

#ifndef DATACOLLAB_CONFIG_HPP_
#define DATACOLLAB_CONFIG_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "datacollab/dataset.hpp"
#include "datacollab/random.hpp"

namespace datacollab {

struct ExperimentConfig {
  // "mnist" reads <mnist_dir>/{train,t10k}-{images-idx3,labels-idx1}-ubyte[.gz];
  // "synthetic" generates Gaussian blobs from the synth_* keys.
  std::string dataset = "mnist";
  std::string mnist_dir = "data/mnist";
  std::int64_t synth_classes = 3;
  std::int64_t synth_per_class = 400;
  std::int64_t synth_test_per_class = 200;
  std::int64_t synth_dim = 50;
  double synth_separation = 10.0;

  std::int64_t parties = 4;
  std::int64_t n_per_party = 50;
  std::int64_t intermediate_dim = 25;
  std::int64_t collab_dim = 0;   // 0: same as intermediate_dim
  std::int64_t anchor_rows = 0;  // 0: 2000 for mnist, scaled by feature count otherwise
  double anchor_lo = NAN;        // NaN: training-pool minimum
  double anchor_hi = NAN;        // NaN: training-pool maximum
  double lambda = 0.1;
  std::int64_t knn_k = 7;

  std::int64_t trials = 100;
  std::int64_t zero_eps_trials = 10;
  double epsilon_min = 1e-6;
  double epsilon_max = 1e-2;
  std::vector<double> epsilon_grid = {0.0, 1e-4, 1e-3, 1e-2, 0.1, 0.2, 0.3, 0.4, 0.5};
  double bound_constant = std::exp(0.5);
  std::int64_t test_size = 0;  // 0: the whole test split

  Seed master_seed = 1;
  std::int64_t workers = 1;

  bool operator==(const ExperimentConfig& other) const;
};

// Privacy-experiment defaults: c = 10, n_i = 100, m_i = 25.
ExperimentConfig PrivacyDefaults();

ExperimentConfig ParseConfig(std::string_view text, ExperimentConfig base = {});
ExperimentConfig LoadConfig(const std::filesystem::path& path, ExperimentConfig base = {});
std::string Serialize(const ExperimentConfig& config);

// Throws ArgumentError on counts < 1, an unknown dataset kind, or an
// inverted epsilon range.
void Validate(const ExperimentConfig& config);

struct ExperimentData {
  LabeledData train_pool;
  LabeledData test;
};

ExperimentData LoadExperimentData(const ExperimentConfig& config);

// Fills the 0/NaN "auto" fields from the loaded data and validates
// intermediate_dim < feature count.
ExperimentConfig Resolve(ExperimentConfig config, const ExperimentData& data);

}  // namespace datacollab

#endif  // DATACOLLAB_CONFIG_HPP_
