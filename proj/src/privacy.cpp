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

#include "datacollab/privacy.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "datacollab/errors.hpp"
#include "datacollab/experiment.hpp"

namespace datacollab {
namespace {

PartyDataset KeepRows(const PartyDataset& party, const std::vector<double>& dist, double epsilon) {
  std::vector<Eigen::Index> keep;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] >= epsilon) keep.push_back(static_cast<Eigen::Index>(i));
  }
  PartyDataset out{Matrix(static_cast<Eigen::Index>(keep.size()), party.x.cols()),
                   Matrix(static_cast<Eigen::Index>(keep.size()), party.y.cols()),
                   party.party_id};
  for (std::size_t i = 0; i < keep.size(); ++i) {
    out.x.row(static_cast<Eigen::Index>(i)) = party.x.row(keep[i]);
    out.y.row(static_cast<Eigen::Index>(i)) = party.y.row(keep[i]);
  }
  return out;
}

double TestAccuracy(const Matrix& scores, const Labels& truth) {
  return Accuracy(Classify(scores), truth);
}

struct EpsilonOutcome {
  bool ok = false;
  double min_edr = 0.0;
  double avg_samples = 0.0;
  double acc = 0.0;
};

struct TrialOutcome {
  std::vector<EpsilonOutcome> per_epsilon;
  double centralized_acc = 0.0;
  double individual_acc = 0.0;
};

TrialOutcome RunTradeoffTrial(const ExperimentData& data, const ExperimentConfig& config,
                              Seed seed) {
  const SampledParties sample =
      SampleParties(data.train_pool, config.parties, config.n_per_party,
                    DeriveSeed(seed, {stream::kPartySample}));
  const Eigen::Index m = data.train_pool.x.cols();
  const AnchorData anchor = GenerateAnchor(m, config.anchor_rows, config.anchor_lo,
                                           config.anchor_hi, DeriveSeed(seed, {stream::kAnchor}));
  const PipelineOptions options{config.collab_dim, config.lambda, config.knn_k};

  // Maps are fit once on the original party data and kept across epsilons.
  std::vector<LinearMap> maps;
  std::vector<DisclosureReport> reports;
  for (const PartyDataset& party : sample.parties) {
    maps.push_back(FitPca(party.x, config.intermediate_dim));
    reports.push_back(PartyDisclosure(party, maps.back()));
  }

  TrialOutcome out;
  {
    const LinearMap pooled = FitPca(sample.pooled_x, config.intermediate_dim);
    const KernelModel model = CentralizedBaseline(sample.pooled_x, sample.pooled_y,
                                                  pooled.f_matrix(), config.lambda, config.knn_k);
    out.centralized_acc =
        TestAccuracy(PredictScores(model, Apply(pooled, data.test.x)), data.test.labels);
  }
  {
    double total = 0.0;
    for (std::size_t i = 0; i < sample.parties.size(); ++i) {
      const KernelModel model =
          IndividualBaseline(sample.parties[i], maps[i], config.lambda, config.knn_k);
      total += TestAccuracy(PredictScores(model, Apply(maps[i], data.test.x)), data.test.labels);
    }
    out.individual_acc = total / static_cast<double>(sample.parties.size());
  }

  for (double epsilon : config.epsilon_grid) {
    std::vector<PartyDataset> kept_parties;
    std::vector<LinearMap> kept_maps;
    EpsilonOutcome outcome;
    outcome.min_edr = std::numeric_limits<double>::infinity();
    double retained = 0.0;
    for (std::size_t i = 0; i < sample.parties.size(); ++i) {
      PartyDataset kept = KeepRows(sample.parties[i], reports[i].per_sample_dist, epsilon);
      retained += static_cast<double>(kept.size());
      if (kept.size() == 0) continue;
      for (double d : reports[i].per_sample_dist) {
        if (d >= epsilon) outcome.min_edr = std::min(outcome.min_edr, d);
      }
      kept_parties.push_back(std::move(kept));
      kept_maps.push_back(maps[i]);
    }
    outcome.avg_samples = retained / static_cast<double>(sample.parties.size());
    if (!kept_parties.empty()) {
      try {
        const TrainedPipeline pipeline = TrainPipeline(kept_parties, kept_maps, anchor, options);
        double total = 0.0;
        for (const PartyDataset& party : kept_parties) {
          total += TestAccuracy(Predict(pipeline, party.party_id, data.test.x), data.test.labels);
        }
        outcome.acc = total / static_cast<double>(kept_parties.size());
        outcome.ok = true;
      } catch (const ArgumentError&) {
        // Too few retained samples for the learner (fewer than knn_k + 1).
        outcome.ok = false;
      }
    }
    out.per_epsilon.push_back(outcome);
  }
  return out;
}

}  // namespace

Matrix ReconstructionAttack(const Matrix& x_tilde, const LinearMap& map) {
  return Reconstruct(map, x_tilde);
}

DisclosureReport EdrDistances(const Matrix& x, const Matrix& x_prime, PartyId party_id) {
  if (x.rows() != x_prime.rows() || x.cols() != x_prime.cols()) {
    throw ArgumentError("edr_distances: shape mismatch");
  }
  DisclosureReport report;
  report.party_id = party_id;
  report.per_sample_dist.reserve(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double norm = x.row(i).norm();
    if (norm == 0.0) {
      throw DegenerateError("edr_distances: row " + std::to_string(i) + " has zero norm");
    }
    report.per_sample_dist.push_back((x.row(i) - x_prime.row(i)).norm() / norm);
  }
  if (!report.per_sample_dist.empty()) {
    report.min_dist =
        *std::min_element(report.per_sample_dist.begin(), report.per_sample_dist.end());
    report.mean_dist = std::accumulate(report.per_sample_dist.begin(),
                                       report.per_sample_dist.end(), 0.0) /
                       static_cast<double>(report.per_sample_dist.size());
  }
  return report;
}

DisclosureReport PartyDisclosure(const PartyDataset& party, const LinearMap& map) {
  const Matrix recovered = ReconstructionAttack(Apply(map, party.x), map);
  return EdrDistances(party.x, recovered, party.party_id);
}

PartyDataset DownSample(const PartyDataset& party, const LinearMap& map, double epsilon) {
  if (!(epsilon >= 0.0)) throw ArgumentError("down_sample: epsilon must be >= 0");
  if (party.size() == 0) return party;
  return KeepRows(party, PartyDisclosure(party, map).per_sample_dist, epsilon);
}

TradeoffTable TradeoffExperiment(const ExperimentData& data, const ExperimentConfig& config) {
  if (config.trials < 1) throw ArgumentError("tradeoff_experiment: trials must be >= 1");
  const auto trials = static_cast<std::size_t>(config.trials);
  std::vector<TrialOutcome> outcomes(trials);
  ParallelFor(trials, static_cast<std::size_t>(config.workers), [&](std::size_t t) {
    outcomes[t] = RunTradeoffTrial(data, config,
                                   DeriveSeed(config.master_seed, {stream::kTrial, t}));
  });

  TradeoffTable table;
  for (std::size_t e = 0; e < config.epsilon_grid.size(); ++e) {
    TradeoffRow row;
    row.label = "collaborative";
    row.epsilon = config.epsilon_grid[e];
    double min_edr = std::numeric_limits<double>::infinity();
    for (const TrialOutcome& trial : outcomes) {
      const EpsilonOutcome& o = trial.per_epsilon[e];
      if (!o.ok) {
        ++row.failed_trials;
        continue;
      }
      ++row.trials;
      row.avg_samples += o.avg_samples;
      row.avg_acc += o.acc;
      min_edr = std::min(min_edr, o.min_edr);
    }
    if (row.trials > 0) {
      row.avg_samples /= row.trials;
      row.avg_acc = 100.0 * row.avg_acc / row.trials;
      row.min_edr = min_edr;
    }
    table.rows.push_back(row);
  }

  table.centralized.label = "centralized";
  table.centralized.avg_samples = static_cast<double>(config.parties * config.n_per_party);
  table.individual.label = "individual";
  table.individual.avg_samples = static_cast<double>(config.n_per_party);
  for (const TrialOutcome& trial : outcomes) {
    table.centralized.avg_acc += trial.centralized_acc;
    table.individual.avg_acc += trial.individual_acc;
  }
  table.centralized.trials = table.individual.trials = static_cast<int>(trials);
  table.centralized.avg_acc *= 100.0 / static_cast<double>(trials);
  table.individual.avg_acc *= 100.0 / static_cast<double>(trials);
  return table;
}

void WriteTradeoffCsv(std::ostream& out, const TradeoffTable& table,
                      const ExperimentConfig& config) {
  WriteConfigEcho(out, config);
  out << "epsilon,min_edr,avg_samples,avg_acc,trials\n";
  for (const TradeoffRow& row : table.rows) {
    out << FormatReal(row.epsilon) << ','
        << (row.min_edr ? FormatReal(*row.min_edr) : std::string()) << ','
        << FormatReal(row.avg_samples) << ',' << FormatReal(row.avg_acc) << ',' << row.trials
        << '\n';
  }
  for (const TradeoffRow* row : {&table.centralized, &table.individual}) {
    out << row->label << ",," << FormatReal(row->avg_samples) << ','
        << FormatReal(row->avg_acc) << ',' << row->trials << '\n';
  }
}

}  // namespace datacollab
