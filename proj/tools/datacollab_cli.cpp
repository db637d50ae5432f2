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

// datacollab: experiment harness for the collaborative data analysis
// protocol.
//
//   datacollab accuracy-exp [--config f] [--seed n] [--out dir] [--workers n]
//   datacollab privacy-exp  [...]
//   datacollab demo         [... --epsilon e]
//
// Dataset flags: --dataset {mnist,synthetic} and --mnist-dir <dir>.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "datacollab/analysis.hpp"
#include "datacollab/bundle.hpp"
#include "datacollab/config.hpp"
#include "datacollab/errors.hpp"
#include "datacollab/experiment.hpp"
#include "datacollab/privacy.hpp"

namespace {

using namespace datacollab;

struct CommonFlags {
  std::string config_path;
  std::optional<Seed> seed;
  std::string out_dir = ".";
  std::optional<std::int64_t> workers;
  std::optional<std::string> dataset;
  std::optional<std::string> mnist_dir;
};

void AddCommonFlags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Key-value experiment config file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", flags.seed, "Master seed (overrides config)");
  cmd->add_option("--out", flags.out_dir, "Output directory");
  cmd->add_option("--workers", flags.workers, "Concurrent trials");
  cmd->add_option("--dataset", flags.dataset, "mnist or synthetic");
  cmd->add_option("--mnist-dir", flags.mnist_dir,
                  "Directory with {train,t10k}-{images-idx3,labels-idx1}-ubyte[.gz]");
}

ExperimentConfig BuildConfig(const CommonFlags& flags, ExperimentConfig base) {
  ExperimentConfig config =
      flags.config_path.empty() ? base : LoadConfig(flags.config_path, base);
  if (flags.seed) config.master_seed = *flags.seed;
  if (flags.workers) config.workers = *flags.workers;
  if (flags.dataset) config.dataset = *flags.dataset;
  if (flags.mnist_dir) config.mnist_dir = *flags.mnist_dir;
  return config;
}

ExperimentData LoadData(const ExperimentConfig& config) {
  if (config.dataset == "mnist" && !std::filesystem::is_directory(config.mnist_dir)) {
    throw ArgumentError("--mnist-dir: directory '" + config.mnist_dir +
                        "' not found (set --mnist-dir or mnist_dir in the config)");
  }
  return LoadExperimentData(config);
}

std::ofstream OpenOutput(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::trunc);
  if (!out) throw FormatError("cannot write " + (dir / name).string());
  return out;
}

int RunAccuracy(const CommonFlags& flags) {
  ExperimentConfig config = BuildConfig(flags, ExperimentConfig{});
  const ExperimentData data = LoadData(config);
  config = Resolve(config, data);
  const AccuracyExperimentResult result = AccuracyExperiment(data, config);

  const std::filesystem::path dir = flags.out_dir;
  {
    auto out = OpenOutput(dir, "accuracy_records.csv");
    WriteRecordsCsv(out, result.random_epsilon, config);
  }
  {
    auto out = OpenOutput(dir, "accuracy_zero_epsilon.csv");
    WriteRecordsCsv(out, result.zero_epsilon, config);
  }
  {
    auto out = OpenOutput(dir, "accuracy_report.txt");
    WriteAccuracyReport(out, result, config);
  }
  WriteAccuracyReport(std::cout, result, config);
  const EquivalenceSummary summary = SummarizeZeroEpsilon(result.zero_epsilon);
  return result.zero_epsilon.empty() || summary.all_pass ? 0 : 3;
}

int RunPrivacy(const CommonFlags& flags) {
  ExperimentConfig config = BuildConfig(flags, PrivacyDefaults());
  const ExperimentData data = LoadData(config);
  config = Resolve(config, data);
  const TradeoffTable table = TradeoffExperiment(data, config);
  {
    auto out = OpenOutput(flags.out_dir, "privacy_tradeoff.csv");
    WriteTradeoffCsv(out, table, config);
  }
  std::printf("%-14s %-12s %-12s %-8s %s\n", "epsilon", "min_eDR", "avg_samples", "ACC",
              "trials");
  for (const TradeoffRow& row : table.rows) {
    std::printf("%-14g %-12.3e %-12.2f %-8.1f %d\n", row.epsilon, row.min_edr.value_or(NAN),
                row.avg_samples, row.avg_acc, row.trials);
  }
  for (const TradeoffRow* row : {&table.centralized, &table.individual}) {
    std::printf("%-27s %-12.2f %-8.1f %d\n", row->label.c_str(), row->avg_samples, row->avg_acc,
                row->trials);
  }
  for (const TradeoffRow& row : table.rows) {
    if (row.trials == 0) {
      std::fprintf(stderr, "epsilon=%g: every trial failed (down-sampling left too few samples)\n", row.epsilon);
      return 3;
    }
  }
  return 0;
}

int RunDemo(const CommonFlags& flags, double epsilon, bool export_bundle) {
  ExperimentConfig config = BuildConfig(flags, ExperimentConfig{});
  const ExperimentData data = LoadData(config);
  config = Resolve(config, data);
  const Seed seed = DeriveSeed(config.master_seed, {stream::kTrial, 0});
  const AccuracyRecord record = RunAccuracyTrial(data, config, epsilon, seed);
  std::printf("epsilon=%g\ntau1=%.6e\ntau2=%.6e\ntau3=%.6e\ntau4=%.6e\n", record.epsilon,
              record.tau1, record.tau2, record.tau3, record.tau4);
  std::printf("collaborative ACC=%.2f%%  centralized(F1G1) ACC=%.2f%%\n",
              100.0 * record.cda_accuracy, 100.0 * record.ca_accuracy);

  if (export_bundle) {
    const SampledParties sample = SampleParties(data.train_pool, config.parties,
                                                config.n_per_party,
                                                DeriveSeed(seed, {stream::kPartySample}));
    const Matrix basis = FitPca(sample.pooled_x, config.intermediate_dim).f_matrix();
    std::vector<LinearMap> maps;
    for (std::size_t i = 0; i < sample.parties.size(); ++i) {
      maps.push_back(
          FitPerturbedBasis(basis, epsilon, DeriveSeed(seed, {stream::kPartyMap, i})));
    }
    const AnchorData anchor =
        GenerateAnchor(data.train_pool.x.cols(), config.anchor_rows, config.anchor_lo,
                       config.anchor_hi, DeriveSeed(seed, {stream::kAnchor}));
    const TrainedPipeline pipeline =
        TrainPipeline(sample.parties, maps, anchor,
                      PipelineOptions{config.collab_dim, config.lambda, config.knn_k});
    std::filesystem::create_directories(flags.out_dir);
    const std::filesystem::path dir = flags.out_dir;
    WriteBundle(dir / "analyst_state.bin", AnalystState(pipeline));
    for (PartyId id : pipeline.party_ids) {
      WriteBundle(dir / ("user" + std::to_string(id) + "_state.bin"), UserState(pipeline, id));
    }
    std::ofstream(dir / "demo_config.txt") << Serialize(config);
    std::printf("bundles written to %s\n", dir.string().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collaborative data analysis experiments"};
  app.require_subcommand(1);

  CommonFlags accuracy_flags;
  auto* accuracy = app.add_subcommand("accuracy-exp", "tau1..tau4 accuracy experiment");
  AddCommonFlags(accuracy, accuracy_flags);

  CommonFlags privacy_flags;
  auto* privacy = app.add_subcommand("privacy-exp", "eps-DR / accuracy trade-off table");
  AddCommonFlags(privacy, privacy_flags);

  CommonFlags demo_flags;
  double demo_epsilon = 0.0;
  bool demo_export = false;
  auto* demo = app.add_subcommand("demo", "Single pipeline run with printed tau and ACC");
  AddCommonFlags(demo, demo_flags);
  demo->add_option("--epsilon", demo_epsilon, "Map perturbation level");
  demo->add_flag("--export-bundle", demo_export, "Write analyst/user state bundles to --out");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*accuracy) return RunAccuracy(accuracy_flags);
    if (*privacy) return RunPrivacy(privacy_flags);
    if (*demo) return RunDemo(demo_flags, demo_epsilon, demo_export);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
