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

#ifndef DATACOLLAB_RANDOM_HPP_
#define DATACOLLAB_RANDOM_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

#include "datacollab/numerics.hpp"

namespace datacollab {

using Seed = std::uint64_t;
using Rng = std::mt19937_64;

// Counter-based seed derivation: the child seed depends only on the parent
// seed and the stream ids, never on how many draws happened before. Trials
// and parties get their seeds this way so serial and parallel runs agree.
//
//   child = splitmix64(parent ^ splitmix64(id_0 ^ splitmix64(id_1 ^ ...)))
Seed DeriveSeed(Seed parent, std::initializer_list<std::uint64_t> stream_ids);

// Fixed stream ids used by the experiment runners.
namespace stream {
inline constexpr std::uint64_t kTrial = 1;
inline constexpr std::uint64_t kZeroEpsilonTrial = 2;
inline constexpr std::uint64_t kPartySample = 3;
inline constexpr std::uint64_t kPartyMap = 4;
inline constexpr std::uint64_t kAnchor = 5;
inline constexpr std::uint64_t kEpsilon = 6;
}  // namespace stream

Matrix StandardNormal(Eigen::Index rows, Eigen::Index cols, Rng& rng);
Matrix Uniform(Eigen::Index rows, Eigen::Index cols, double lo, double hi, Rng& rng);

}  // namespace datacollab

#endif  // DATACOLLAB_RANDOM_HPP_
