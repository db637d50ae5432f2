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

#include "datacollab/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "datacollab/errors.hpp"
#include "datacollab/experiment.hpp"

namespace datacollab {

double Tau1(const CollaborationMap& collaboration) {
  if (collaboration.sigma_kept_norm == 0.0) {
    throw DegenerateError("tau1: kept singular values are all zero");
  }
  return collaboration.sigma_discarded_norm / collaboration.sigma_kept_norm;
}

double Tau2(std::span<const Matrix> f_list, Eigen::Index target_dim) {
  if (target_dim < 1) throw ArgumentError("tau2: target_dim must be >= 1");
  const Matrix f = HStack(f_list);
  const SvdResult s = Svd(f);
  const Eigen::Index full = s.singular_values.size();
  const double total = s.singular_values.norm();
  if (total == 0.0) throw DegenerateError("tau2: concatenated maps are zero");
  if (target_dim >= full) return 0.0;
  return s.singular_values.tail(full - target_dim).norm() / total;
}

double Tau3(const Matrix& x, std::span<const Eigen::Index> party_rows,
            std::span<const Matrix> f_list, std::span<const Matrix> g_list) {
  if (party_rows.size() != f_list.size() || f_list.size() != g_list.size() || f_list.empty()) {
    throw ArgumentError("tau3: need one row count, F and G per party");
  }
  Eigen::Index total_rows = 0;
  for (Eigen::Index n : party_rows) {
    if (n < 0) throw ArgumentError("tau3: negative row count");
    total_rows += n;
  }
  if (total_rows != x.rows()) throw ArgumentError("tau3: row splits do not partition x");

  const Matrix reference = x * (f_list[0] * g_list[0]);
  const double denom = reference.norm();
  if (denom == 0.0) throw DegenerateError("tau3: ||X F_1 G_1||_F is zero");

  double squared = 0.0;
  Eigen::Index offset = 0;
  for (std::size_t i = 0; i < f_list.size(); ++i) {
    const auto block = x.middleRows(offset, party_rows[i]);
    squared += (reference.middleRows(offset, party_rows[i]) - block * f_list[i] * g_list[i])
                   .squaredNorm();
    offset += party_rows[i];
  }
  return std::sqrt(squared) / denom;
}

double Tau4(std::span<const Label> pred_cda, std::span<const Label> pred_ca) {
  return 1.0 - Nmi(pred_cda, pred_ca);
}

AccuracyRecord RunAccuracyTrial(const ExperimentData& data, const ExperimentConfig& config,
                                double epsilon, Seed seed) {
  const SampledParties sample =
      SampleParties(data.train_pool, config.parties, config.n_per_party,
                    DeriveSeed(seed, {stream::kPartySample}));
  const Matrix basis = FitPca(sample.pooled_x, config.intermediate_dim).f_matrix();

  std::vector<LinearMap> maps;
  for (std::size_t i = 0; i < sample.parties.size(); ++i) {
    maps.push_back(FitPerturbedBasis(basis, epsilon, DeriveSeed(seed, {stream::kPartyMap, i})));
  }
  const AnchorData anchor =
      GenerateAnchor(data.train_pool.x.cols(), config.anchor_rows, config.anchor_lo,
                     config.anchor_hi, DeriveSeed(seed, {stream::kAnchor}));
  const TrainedPipeline pipeline = TrainPipeline(
      sample.parties, maps, anchor, PipelineOptions{config.collab_dim, config.lambda, config.knn_k});
  const std::vector<Matrix> combined = CombinedMaps(pipeline);

  const KernelModel centralized = CentralizedBaseline(sample.pooled_x, sample.pooled_y,
                                                      combined[0], config.lambda, config.knn_k);
  const Labels ca_once = Classify(PredictScores(centralized, data.test.x * combined[0]));

  Labels cda;
  Labels ca;
  double cda_hits = 0.0;
  for (const PartyDataset& party : sample.parties) {
    const Labels predicted = Classify(Predict(pipeline, party.party_id, data.test.x));
    cda_hits += Accuracy(predicted, data.test.labels);
    cda.insert(cda.end(), predicted.begin(), predicted.end());
    ca.insert(ca.end(), ca_once.begin(), ca_once.end());
  }

  std::vector<Matrix> f_list;
  for (const LinearMap& map : maps) f_list.push_back(map.f_matrix());

  AccuracyRecord record;
  record.epsilon = epsilon;
  record.seed = seed;
  record.tau1 = Tau1(pipeline.collaboration);
  record.tau2 = Tau2(f_list, config.collab_dim);
  record.tau3 = Tau3(sample.pooled_x, sample.sizes, f_list, pipeline.collaboration.g);
  record.tau4 = Tau4(cda, ca);
  record.cda_accuracy = cda_hits / static_cast<double>(sample.parties.size());
  record.ca_accuracy = Accuracy(ca_once, data.test.labels);
  return record;
}

AccuracyExperimentResult AccuracyExperiment(const ExperimentData& data,
                                            const ExperimentConfig& config) {
  if (config.trials < 2) throw ArgumentError("accuracy_experiment: need at least 2 trials");
  const auto workers = static_cast<std::size_t>(config.workers);
  AccuracyExperimentResult result;

  result.zero_epsilon.resize(static_cast<std::size_t>(config.zero_eps_trials));
  ParallelFor(result.zero_epsilon.size(), workers, [&](std::size_t t) {
    result.zero_epsilon[t] = RunAccuracyTrial(
        data, config, 0.0, DeriveSeed(config.master_seed, {stream::kZeroEpsilonTrial, t}));
  });

  const double log_lo = std::log(config.epsilon_min);
  const double log_hi = std::log(config.epsilon_max);
  result.random_epsilon.resize(static_cast<std::size_t>(config.trials));
  ParallelFor(result.random_epsilon.size(), workers, [&](std::size_t t) {
    Rng eps_rng(DeriveSeed(config.master_seed, {stream::kEpsilon, t}));
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(eps_rng);
    const double epsilon = std::exp(log_lo + u * (log_hi - log_lo));
    result.random_epsilon[t] = RunAccuracyTrial(
        data, config, epsilon, DeriveSeed(config.master_seed, {stream::kTrial, t}));
  });
  return result;
}

std::vector<AccuracyRecord> PositiveRecords(std::span<const AccuracyRecord> records) {
  std::vector<AccuracyRecord> out;
  for (const AccuracyRecord& r : records) {
    if (r.tau1 > 0.0 && r.tau2 > 0.0 && r.tau3 > 0.0 && r.tau4 > 0.0) out.push_back(r);
  }
  return out;
}

Matrix Correlations(std::span<const AccuracyRecord> records) {
  if (records.size() < 2) throw ArgumentError("correlations: need at least 2 records");
  const auto n = static_cast<Eigen::Index>(records.size());
  Matrix logs(n, 4);
  for (Eigen::Index i = 0; i < n; ++i) {
    const AccuracyRecord& r = records[static_cast<std::size_t>(i)];
    const std::array<double, 4> taus = {r.tau1, r.tau2, r.tau3, r.tau4};
    for (Eigen::Index j = 0; j < 4; ++j) {
      if (!(taus[j] > 0.0)) {
        throw ArgumentError("correlations: record " + std::to_string(i) + " has tau" +
                            std::to_string(j + 1) + " <= 0");
      }
      logs(i, j) = std::log(taus[j]);
    }
  }
  const Matrix centered = logs.rowwise() - logs.colwise().mean();
  const Vector spread = centered.colwise().norm();
  for (Eigen::Index j = 0; j < 4; ++j) {
    if (spread(j) == 0.0) {
      throw DegenerateError("correlations: log(tau" + std::to_string(j + 1) +
                            ") has zero variance");
    }
  }
  Matrix corr = (centered.transpose() * centered).array() /
                (spread * spread.transpose()).array();
  corr.diagonal().setOnes();
  return corr;
}

double BoundCheck(std::span<const AccuracyRecord> records, double constant) {
  if (records.empty()) throw ArgumentError("bound_check: no records");
  std::size_t satisfied = 0;
  for (const AccuracyRecord& r : records) {
    if (r.tau4 == 0.0) {
      ++satisfied;
    } else if (r.tau1 > 0.0 &&
               std::log(r.tau4) <= 0.5 * std::log(r.tau1) + std::log(constant)) {
      ++satisfied;
    }
  }
  return static_cast<double>(satisfied) / static_cast<double>(records.size());
}

EquivalenceSummary SummarizeZeroEpsilon(std::span<const AccuracyRecord> records) {
  EquivalenceSummary s;
  if (records.empty()) return s;
  s.all_pass = true;
  for (const AccuracyRecord& r : records) {
    s.max_tau1 = std::max(s.max_tau1, r.tau1);
    s.max_tau2 = std::max(s.max_tau2, r.tau2);
    s.max_tau3 = std::max(s.max_tau3, r.tau3);
    s.max_tau4 = std::max(s.max_tau4, r.tau4);
    s.mean_tau1 += r.tau1;
    s.mean_tau2 += r.tau2;
    s.mean_tau3 += r.tau3;
    s.mean_tau4 += r.tau4;
    s.all_pass = s.all_pass && r.tau1 <= kEquivalenceTolerance &&
                 r.tau2 <= kEquivalenceTolerance && r.tau3 <= kEquivalenceTolerance &&
                 r.tau4 == 0.0;
  }
  const auto n = static_cast<double>(records.size());
  s.mean_tau1 /= n;
  s.mean_tau2 /= n;
  s.mean_tau3 /= n;
  s.mean_tau4 /= n;
  return s;
}

void WriteRecordsCsv(std::ostream& out, std::span<const AccuracyRecord> records,
                     const ExperimentConfig& config) {
  WriteConfigEcho(out, config);
  out << "epsilon,tau1,tau2,tau3,tau4,seed\n";
  for (const AccuracyRecord& r : records) {
    out << FormatReal(r.epsilon) << ',' << FormatReal(r.tau1) << ',' << FormatReal(r.tau2)
        << ',' << FormatReal(r.tau3) << ',' << FormatReal(r.tau4) << ',' << r.seed << '\n';
  }
}

void WriteAccuracyReport(std::ostream& out, const AccuracyExperimentResult& result,
                         const ExperimentConfig& config) {
  WriteConfigEcho(out, config);
  char buf[160];

  const EquivalenceSummary s = SummarizeZeroEpsilon(result.zero_epsilon);
  out << "\n== epsilon = 0 batch (" << result.zero_epsilon.size() << " runs) ==\n";
  std::snprintf(buf, sizeof(buf), "mean tau1=%.3e tau2=%.3e tau3=%.3e tau4=%.3e\n", s.mean_tau1,
                s.mean_tau2, s.mean_tau3, s.mean_tau4);
  out << buf;
  std::snprintf(buf, sizeof(buf), "max  tau1=%.3e tau2=%.3e tau3=%.3e tau4=%.3e\n", s.max_tau1,
                s.max_tau2, s.max_tau3, s.max_tau4);
  out << buf;
  out << "equivalence (tau1..3 <= 1e-10, tau4 == 0): "
      << (result.zero_epsilon.empty() ? "not run" : (s.all_pass ? "PASS" : "FAIL")) << "\n";

  const std::vector<AccuracyRecord> positive = PositiveRecords(result.random_epsilon);
  out << "\n== random epsilon batch (" << result.random_epsilon.size() << " runs, "
      << positive.size() << " with all tau > 0) ==\n";
  try {
    const Matrix corr = Correlations(positive);
    out << "Pearson correlation of log(tau_i):\n        tau1     tau2     tau3     tau4\n";
    for (Eigen::Index i = 0; i < 4; ++i) {
      std::snprintf(buf, sizeof(buf), "tau%ld %8.4f %8.4f %8.4f %8.4f\n",
                    static_cast<long>(i + 1), corr(i, 0), corr(i, 1), corr(i, 2), corr(i, 3));
      out << buf;
    }
  } catch (const std::exception& e) {
    out << "correlation unavailable: " << e.what() << "\n";
  }
  if (!result.random_epsilon.empty()) {
    std::snprintf(buf, sizeof(buf), "bound tau4 <= %.6g * sqrt(tau1): fraction %.4f\n",
                  config.bound_constant, BoundCheck(result.random_epsilon, config.bound_constant));
    out << buf;
  }
}

}  // namespace datacollab
