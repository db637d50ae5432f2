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

// epsilon-DR disclosure metrics, the pseudo-inverse reconstruction attack,
// and the down-sampling defense.
//
// A sample x is scored by dist(x, x') = ||x - x'||_2 / ||x||_2 where x' is
// what an attacker holding the map F and the data center mu recovers from
// x F. Down-sampling drops every training sample scoring below epsilon,
// so the smallest score among retained samples is at least epsilon.

#ifndef DATACOLLAB_PRIVACY_HPP_
#define DATACOLLAB_PRIVACY_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "datacollab/config.hpp"
#include "datacollab/mappings.hpp"
#include "datacollab/protocol.hpp"

namespace datacollab {

struct DisclosureReport {
  std::vector<double> per_sample_dist;
  double min_dist = 0.0;
  double mean_dist = 0.0;  // empirical estimate of the expected distance
  PartyId party_id = 0;
};

// Attacker's recovery with a stolen (F, mu); identical to Reconstruct().
Matrix ReconstructionAttack(const Matrix& x_tilde, const LinearMap& map);

// Throws DegenerateError naming the first zero-norm row of x.
DisclosureReport EdrDistances(const Matrix& x, const Matrix& x_prime, PartyId party_id = 0);

// Scores of the party's own samples under its own map.
DisclosureReport PartyDisclosure(const PartyDataset& party, const LinearMap& map);

// Keeps rows with dist >= epsilon (equality kept), labels filtered in
// lockstep. May return an empty party.
PartyDataset DownSample(const PartyDataset& party, const LinearMap& map, double epsilon);

struct TradeoffRow {
  std::string label;  // "collaborative", "centralized" or "individual"
  double epsilon = 0.0;
  // Smallest score over retained samples of every party and successful
  // trial. Not set for the baseline rows.
  std::optional<double> min_edr;
  double avg_samples = 0.0;  // per party, averaged over successful trials
  double avg_acc = 0.0;      // percent
  int trials = 0;            // successful trials
  int failed_trials = 0;     // every party emptied by down-sampling
};

struct TradeoffTable {
  std::vector<TradeoffRow> rows;  // one per epsilon, in grid order
  TradeoffRow centralized;
  TradeoffRow individual;
};

// Per trial: sample parties, fit PCA maps on the original party data, then
// for each epsilon down-sample, drop emptied parties, run the protocol and
// score the shared test split through every participating party's path.
// Baselines: centralized PCA + K-RR on the pooled data, and each party
// alone with its own PCA map.
TradeoffTable TradeoffExperiment(const ExperimentData& data, const ExperimentConfig& config);

// Columns: epsilon,min_edr,avg_samples,avg_acc,trials. Baseline rows put
// their label in the epsilon column and leave min_edr empty. The resolved
// config is echoed as leading '#' lines.
void WriteTradeoffCsv(std::ostream& out, const TradeoffTable& table,
                      const ExperimentConfig& config);

}  // namespace datacollab

#endif  // DATACOLLAB_PRIVACY_HPP_
