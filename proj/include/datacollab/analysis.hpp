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

// Accuracy diagnostics comparing the collaborative pipeline (CDA) with a
// centralized analysis (CA) that reduces pooled data by F_1 G_1:
//
//   tau1 = ||Sigma_2||_F / ||Sigma_1||_F     discarded vs kept spectrum of
//                                            the concatenated anchor encodings
//   tau2 = ||Sigma_F2||_F / ||Sigma_F||_F    tail vs total spectrum of
//                                            [F_1, ..., F_c]
//   tau3 = ||X F_1 G_1 - [X_i F_i G_i]_i||_F / ||X F_1 G_1||_F
//   tau4 = 1 - NMI(test predictions of CDA, test predictions of CA)
//
// When every F_i spans the same subspace all four vanish: the two analyses
// produce the same predictions.

#ifndef DATACOLLAB_ANALYSIS_HPP_
#define DATACOLLAB_ANALYSIS_HPP_

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "datacollab/config.hpp"
#include "datacollab/learner.hpp"
#include "datacollab/protocol.hpp"

namespace datacollab {

struct AccuracyRecord {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double tau3 = 0.0;
  double tau4 = 0.0;
  double epsilon = 0.0;
  Seed seed = 0;
  // Test accuracies, informational only.
  double cda_accuracy = 0.0;
  double ca_accuracy = 0.0;
};

double Tau1(const CollaborationMap& collaboration);
double Tau2(std::span<const Matrix> f_list, Eigen::Index target_dim);
// party_rows[i] is the number of consecutive rows of x owned by party i.
double Tau3(const Matrix& x, std::span<const Eigen::Index> party_rows,
            std::span<const Matrix> f_list, std::span<const Matrix> g_list);
double Tau4(std::span<const Label> pred_cda, std::span<const Label> pred_ca);

// One trial: PCA basis B on the pooled party data, perturbed-basis maps
// F_i = B E1_i + epsilon ||B||_F E2_i, the collaborative pipeline, and the
// centralized baseline with F_1 G_1. The shared test split is scored
// through every party's path; tau4 compares those c blocks against the
// centralized predictions repeated c times.
AccuracyRecord RunAccuracyTrial(const ExperimentData& data, const ExperimentConfig& config,
                                double epsilon, Seed seed);

struct AccuracyExperimentResult {
  std::vector<AccuracyRecord> zero_epsilon;    // zero_eps_trials runs at epsilon = 0
  std::vector<AccuracyRecord> random_epsilon;  // trials runs, epsilon log-uniform
};

// Trial t draws epsilon log-uniformly on [epsilon_min, epsilon_max] from
// its own derived seed, so records do not depend on worker count.
AccuracyExperimentResult AccuracyExperiment(const ExperimentData& data,
                                            const ExperimentConfig& config);

// Records whose four taus are all strictly positive (log-defined).
std::vector<AccuracyRecord> PositiveRecords(std::span<const AccuracyRecord> records);

// 4 x 4 Pearson matrix of log(tau1..tau4). Requires >= 2 records with all
// tau > 0; a constant column is a DegenerateError.
Matrix Correlations(std::span<const AccuracyRecord> records);

// Fraction with log(tau4) <= log(tau1) / 2 + log(constant); tau4 == 0
// always satisfies.
double BoundCheck(std::span<const AccuracyRecord> records, double constant);

struct EquivalenceSummary {
  double max_tau1 = 0.0;
  double max_tau2 = 0.0;
  double max_tau3 = 0.0;
  double max_tau4 = 0.0;
  double mean_tau1 = 0.0;
  double mean_tau2 = 0.0;
  double mean_tau3 = 0.0;
  double mean_tau4 = 0.0;
  bool all_pass = false;  // tau1..3 <= 1e-10 and tau4 == 0 for every record
};

inline constexpr double kEquivalenceTolerance = 1e-10;

EquivalenceSummary SummarizeZeroEpsilon(std::span<const AccuracyRecord> records);

// CSV with columns epsilon,tau1,tau2,tau3,tau4,seed after the config echo.
void WriteRecordsCsv(std::ostream& out, std::span<const AccuracyRecord> records,
                     const ExperimentConfig& config);

// Plain-text report: config echo, equivalence summary, correlation matrix
// and bound-check fraction.
void WriteAccuracyReport(std::ostream& out, const AccuracyExperimentResult& result,
                         const ExperimentConfig& config);

}  // namespace datacollab

#endif  // DATACOLLAB_ANALYSIS_HPP_
