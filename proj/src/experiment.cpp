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

#include "datacollab/experiment.hpp"

#include <cstdio>
#include <numeric>
#include <sstream>

#include "datacollab/errors.hpp"

namespace datacollab {

SampledParties SampleParties(const LabeledData& pool, Eigen::Index parties,
                             Eigen::Index n_per_party, Seed seed) {
  if (parties < 1 || n_per_party < 1) throw ArgumentError("sample_parties: counts must be >= 1");
  const Eigen::Index needed = parties * n_per_party;
  if (needed > pool.size()) {
    throw ArgumentError("sample_parties: need " + std::to_string(needed) + " rows, pool has " +
                        std::to_string(pool.size()));
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(pool.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(static_cast<std::size_t>(needed));

  const LabeledData drawn = Subset(pool, order);
  SampledParties out;
  out.pooled_x = drawn.x;
  out.pooled_y = OneHot(drawn.labels, pool.num_classes);
  for (Eigen::Index p = 0; p < parties; ++p) {
    const Eigen::Index start = p * n_per_party;
    out.parties.push_back(PartyDataset{out.pooled_x.middleRows(start, n_per_party),
                                       out.pooled_y.middleRows(start, n_per_party),
                                       static_cast<PartyId>(p)});
    out.sizes.push_back(n_per_party);
  }
  return out;
}

void ParallelFor(std::size_t count, std::size_t workers,
                 const std::function<void(std::size_t)>& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

void WriteConfigEcho(std::ostream& out, const ExperimentConfig& config) {
  std::istringstream lines(Serialize(config));
  std::string line;
  while (std::getline(lines, line)) out << "# " << line << '\n';
}

std::string FormatReal(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace datacollab
