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

#include "datacollab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <variant>

#include "datacollab/errors.hpp"

namespace datacollab {
namespace {

using FieldRef = std::variant<std::string ExperimentConfig::*, std::int64_t ExperimentConfig::*,
                              double ExperimentConfig::*, Seed ExperimentConfig::*,
                              std::vector<double> ExperimentConfig::*>;

struct Field {
  std::string_view key;
  FieldRef ref;
};

// Serialization order.
const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = {
      {"dataset", &ExperimentConfig::dataset},
      {"mnist_dir", &ExperimentConfig::mnist_dir},
      {"synth_classes", &ExperimentConfig::synth_classes},
      {"synth_per_class", &ExperimentConfig::synth_per_class},
      {"synth_test_per_class", &ExperimentConfig::synth_test_per_class},
      {"synth_dim", &ExperimentConfig::synth_dim},
      {"synth_separation", &ExperimentConfig::synth_separation},
      {"parties", &ExperimentConfig::parties},
      {"n_per_party", &ExperimentConfig::n_per_party},
      {"intermediate_dim", &ExperimentConfig::intermediate_dim},
      {"collab_dim", &ExperimentConfig::collab_dim},
      {"anchor_rows", &ExperimentConfig::anchor_rows},
      {"anchor_lo", &ExperimentConfig::anchor_lo},
      {"anchor_hi", &ExperimentConfig::anchor_hi},
      {"lambda", &ExperimentConfig::lambda},
      {"knn_k", &ExperimentConfig::knn_k},
      {"trials", &ExperimentConfig::trials},
      {"zero_eps_trials", &ExperimentConfig::zero_eps_trials},
      {"epsilon_min", &ExperimentConfig::epsilon_min},
      {"epsilon_max", &ExperimentConfig::epsilon_max},
      {"epsilon_grid", &ExperimentConfig::epsilon_grid},
      {"bound_constant", &ExperimentConfig::bound_constant},
      {"test_size", &ExperimentConfig::test_size},
      {"master_seed", &ExperimentConfig::master_seed},
      {"workers", &ExperimentConfig::workers},
  };
  return fields;
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double ParseDouble(std::string_view text, std::string_view key) {
  const std::string owned(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(owned, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != owned.size()) {
    throw FormatError("config: key '" + std::string(key) + "' expects a number, got '" + owned +
                      "'");
  }
  return v;
}

template <typename Int>
Int ParseInt(std::string_view text, std::string_view key) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError("config: key '" + std::string(key) + "' expects an integer, got '" +
                      std::string(text) + "'");
  }
  return v;
}

}  // namespace

bool ExperimentConfig::operator==(const ExperimentConfig& other) const {
  return Serialize(*this) == Serialize(other);
}

ExperimentConfig PrivacyDefaults() {
  ExperimentConfig config;
  config.parties = 10;
  config.n_per_party = 100;
  config.intermediate_dim = 25;
  config.trials = 10;
  return config;
}

std::string Serialize(const ExperimentConfig& config) {
  std::ostringstream out;
  for (const Field& field : Fields()) {
    out << field.key << " = ";
    std::visit(
        [&](auto member) {
          const auto& value = config.*member;
          using T = std::decay_t<decltype(value)>;
          if constexpr (std::is_same_v<T, std::string>) {
            out << value;
          } else if constexpr (std::is_same_v<T, double>) {
            out << FormatDouble(value);
          } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            for (std::size_t i = 0; i < value.size(); ++i) {
              out << (i ? "," : "") << FormatDouble(value[i]);
            }
          } else {
            out << value;
          }
        },
        field.ref);
    out << '\n';
  }
  return out.str();
}

ExperimentConfig ParseConfig(std::string_view text, ExperimentConfig base) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("config: line " + std::to_string(line_no) + " has no '='");
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    const auto& fields = Fields();
    const auto it = std::find_if(fields.begin(), fields.end(),
                                 [&](const Field& f) { return f.key == key; });
    if (it == fields.end()) {
      throw FormatError("config: unknown key '" + std::string(key) + "' on line " +
                        std::to_string(line_no));
    }
    std::visit(
        [&](auto member) {
          auto& target = base.*member;
          using T = std::decay_t<decltype(target)>;
          if constexpr (std::is_same_v<T, std::string>) {
            target = std::string(value);
          } else if constexpr (std::is_same_v<T, double>) {
            target = ParseDouble(value, key);
          } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            target.clear();
            std::size_t start = 0;
            while (start <= value.size()) {
              const auto comma = std::min(value.find(',', start), value.size());
              target.push_back(ParseDouble(Trim(value.substr(start, comma - start)), key));
              start = comma + 1;
            }
          } else {
            target = ParseInt<T>(value, key);
          }
        },
        it->ref);
  }
  return base;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw FormatError("config: cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConfig(text.str(), std::move(base));
}

void Validate(const ExperimentConfig& config) {
  if (config.dataset != "mnist" && config.dataset != "synthetic") {
    throw ArgumentError("config: dataset must be 'mnist' or 'synthetic', got '" + config.dataset +
                        "'");
  }
  const std::pair<std::string_view, std::int64_t> counts[] = {
      {"parties", config.parties},          {"n_per_party", config.n_per_party},
      {"intermediate_dim", config.intermediate_dim}, {"knn_k", config.knn_k},
      {"trials", config.trials},            {"workers", config.workers},
      {"synth_classes", config.synth_classes}, {"synth_per_class", config.synth_per_class},
      {"synth_test_per_class", config.synth_test_per_class}, {"synth_dim", config.synth_dim}};
  for (const auto& [key, value] : counts) {
    if (value < 1) throw ArgumentError("config: " + std::string(key) + " must be >= 1");
  }
  if (config.collab_dim < 0 || config.anchor_rows < 0 || config.test_size < 0 ||
      config.zero_eps_trials < 0) {
    throw ArgumentError("config: collab_dim, anchor_rows, test_size, zero_eps_trials must be >= 0");
  }
  if (!(config.lambda > 0.0)) throw ArgumentError("config: lambda must be positive");
  if (!(config.epsilon_min > 0.0 && config.epsilon_min <= config.epsilon_max)) {
    throw ArgumentError("config: need 0 < epsilon_min <= epsilon_max");
  }
  for (double eps : config.epsilon_grid) {
    if (!(eps >= 0.0)) throw ArgumentError("config: epsilon_grid entries must be >= 0");
  }
}

ExperimentData LoadExperimentData(const ExperimentConfig& config) {
  Validate(config);
  ExperimentData data;
  if (config.dataset == "mnist") {
    const std::filesystem::path dir = config.mnist_dir;
    auto pick = [&dir](const std::string& stem) {
      const auto gz = dir / (stem + ".gz");
      return std::filesystem::exists(gz) ? gz : dir / stem;
    };
    data.train_pool =
        LoadMnist(pick("train-images-idx3-ubyte"), pick("train-labels-idx1-ubyte"));
    data.test = LoadMnist(pick("t10k-images-idx3-ubyte"), pick("t10k-labels-idx1-ubyte"));
  } else {
    data.train_pool = GenerateSynthetic(config.synth_classes, config.synth_per_class,
                                        config.synth_dim, config.synth_separation,
                                        DeriveSeed(config.master_seed, {100}));
    data.test = GenerateSynthetic(config.synth_classes, config.synth_test_per_class,
                                  config.synth_dim, config.synth_separation,
                                  DeriveSeed(config.master_seed, {101}));
  }
  if (config.test_size > 0) data.test = Head(data.test, config.test_size);
  return data;
}

ExperimentConfig Resolve(ExperimentConfig config, const ExperimentData& data) {
  Validate(config);
  const Eigen::Index features = data.train_pool.x.cols();
  if (config.intermediate_dim >= features) {
    throw ArgumentError("config: intermediate_dim must be < feature count " +
                        std::to_string(features));
  }
  if (config.collab_dim == 0) config.collab_dim = config.intermediate_dim;
  if (config.collab_dim > config.intermediate_dim) {
    throw ArgumentError("config: collab_dim must not exceed intermediate_dim");
  }
  if (config.anchor_rows == 0) {
    if (config.dataset == "mnist") {
      config.anchor_rows = 2000;
    } else {
      const auto scaled = static_cast<std::int64_t>(std::ceil(2000.0 * features / 784.0));
      config.anchor_rows = std::max<std::int64_t>(scaled, 4 * config.intermediate_dim);
    }
  }
  if (std::isnan(config.anchor_lo)) config.anchor_lo = data.train_pool.x.minCoeff();
  if (std::isnan(config.anchor_hi)) config.anchor_hi = data.train_pool.x.maxCoeff();
  if (!(config.anchor_lo < config.anchor_hi)) {
    throw ArgumentError("config: anchor_lo must be < anchor_hi");
  }
  if (config.parties * config.n_per_party > data.train_pool.size()) {
    throw ArgumentError("config: parties * n_per_party exceeds the training pool size " +
                        std::to_string(data.train_pool.size()));
  }
  return config;
}

}  // namespace datacollab
