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

// Collaborative data analysis protocol.
//
// Users hold private data and a private linear map f_i. They encode their
// data and a shared anchor set and send only those encodings (plus labels)
// to the analyst. The analyst aligns the encodings into one collaboration
// space through Z, the leading left singular vectors of the concatenated
// anchor encodings, and per-party least-squares maps G_i, then fits a
// kernel ridge model h on the stacked collaboration representation.
//
// Prediction for party i runs h(G_i(f_i(x))). The analyst entry points
// (AnalystIntegrate, AssembleCollaboration) only accept IntermediateRep
// values, so a LinearMap cannot reach the analyst side.

#ifndef DATACOLLAB_PROTOCOL_HPP_
#define DATACOLLAB_PROTOCOL_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "datacollab/learner.hpp"
#include "datacollab/mappings.hpp"
#include "datacollab/numerics.hpp"
#include "datacollab/random.hpp"

namespace datacollab {

using PartyId = std::size_t;

struct PartyDataset {
  Matrix x;  // n_i x m private features
  Matrix y;  // n_i x classes one-hot targets
  PartyId party_id = 0;

  Eigen::Index size() const { return x.rows(); }
};

// Checks x.rows == y.rows and that every y row is one-hot. Empty parties
// pass; the protocol entry points reject them separately.
void ValidateParty(const PartyDataset& party);

PartyDataset MakeParty(const Matrix& x, std::span<const Label> labels, Eigen::Index num_classes,
                       PartyId party_id);

struct AnchorData {
  Matrix x_anc;  // r x m
};

// What a user sends to the analyst.
struct IntermediateRep {
  Matrix x_tilde;      // n_i x m~
  Matrix x_tilde_anc;  // r x m~
  Matrix y;            // n_i x classes
  PartyId party_id = 0;
};

struct CollaborationMap {
  Matrix z;               // r x m^, orthonormal columns
  std::vector<Matrix> g;  // per party m~ x m^
  double sigma_kept_norm = 0.0;
  double sigma_discarded_norm = 0.0;
};

struct TrainedPipeline {
  std::vector<PartyId> party_ids;
  std::vector<LinearMap> maps;  // user side
  CollaborationMap collaboration;
  KernelModel model;
  std::string config_echo;
};

// Entries i.i.d. uniform on [feature_lo, feature_hi].
AnchorData GenerateAnchor(Eigen::Index m, Eigen::Index r, double feature_lo, double feature_hi,
                          Seed seed);

IntermediateRep UserEncode(const PartyDataset& party, const LinearMap& map,
                           const AnchorData& anchor);

// Z from the leading target_dim left singular vectors of
// [X~_1^anc, ..., X~_c^anc], G_i = argmin ||Z - X~_i^anc G_i||_F.
// Throws DegenerateError when the concatenation has rank < target_dim.
CollaborationMap AnalystIntegrate(std::span<const IntermediateRep> reps,
                                  Eigen::Index target_dim);

// Stacks X~_i G_i and Y_i in party order.
std::pair<Matrix, Matrix> AssembleCollaboration(std::span<const IntermediateRep> reps,
                                                const CollaborationMap& collaboration);

struct PipelineOptions {
  Eigen::Index target_dim = 0;  // 0 means m~ of the first map
  double lambda = kDefaultLambda;
  Eigen::Index knn_k = kDefaultKnn;
};

// encode -> integrate -> assemble -> fit. Throws ArgumentError for an empty
// party list, mismatched list lengths, or an empty party.
TrainedPipeline TrainPipeline(std::span<const PartyDataset> parties,
                              std::span<const LinearMap> maps, const AnchorData& anchor,
                              const PipelineOptions& options);

// h(G_i(f_i(x_test))). Throws ArgumentError for an unknown party id.
Matrix Predict(const TrainedPipeline& pipeline, PartyId party_id, const Matrix& x_test);

// Pools all data and fits the same learner on x * dr.
KernelModel CentralizedBaseline(const Matrix& x, const Matrix& y, const Matrix& dr,
                                double lambda = kDefaultLambda,
                                Eigen::Index knn_k = kDefaultKnn);

KernelModel IndividualBaseline(const PartyDataset& party, const LinearMap& map,
                               double lambda = kDefaultLambda, Eigen::Index knn_k = kDefaultKnn);

// F_i * G_i for every party, the end-to-end linear map into collaboration
// space.
std::vector<Matrix> CombinedMaps(const TrainedPipeline& pipeline);

}  // namespace datacollab

#endif  // DATACOLLAB_PROTOCOL_HPP_
