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

// Helpers shared by the accuracy and privacy experiment runners.

#ifndef DATACOLLAB_EXPERIMENT_HPP_
#define DATACOLLAB_EXPERIMENT_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "datacollab/config.hpp"
#include "datacollab/dataset.hpp"
#include "datacollab/protocol.hpp"

namespace datacollab {

struct SampledParties {
  std::vector<PartyDataset> parties;
  Matrix pooled_x;  // parties stacked in order
  Matrix pooled_y;
  std::vector<Eigen::Index> sizes;
};

// Draws parties * n_per_party distinct rows of the pool and deals them out
// in contiguous blocks. Party ids are 0..parties-1.
SampledParties SampleParties(const LabeledData& pool, Eigen::Index parties,
                             Eigen::Index n_per_party, Seed seed);

// Calls fn(i) for i in [0, count) on up to `workers` threads. Each index
// runs exactly once; the first exception thrown is rethrown after all
// workers stop. Results must be written to per-index slots, which keeps
// output independent of scheduling.
void ParallelFor(std::size_t count, std::size_t workers,
                 const std::function<void(std::size_t)>& fn);

// Writes Serialize(config) as "# key = value" comment lines.
void WriteConfigEcho(std::ostream& out, const ExperimentConfig& config);

std::string FormatReal(double value);

}  // namespace datacollab

#endif  // DATACOLLAB_EXPERIMENT_HPP_
