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

#include "datacollab/protocol.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "datacollab/errors.hpp"

namespace datacollab {

void ValidateParty(const PartyDataset& party) {
  if (party.x.rows() != party.y.rows()) {
    throw ArgumentError("party " + std::to_string(party.party_id) + ": " +
                        std::to_string(party.x.rows()) + " feature rows but " +
                        std::to_string(party.y.rows()) + " label rows");
  }
  for (Eigen::Index i = 0; i < party.y.rows(); ++i) {
    const auto row = party.y.row(i);
    const bool binary = ((row.array() == 0.0) || (row.array() == 1.0)).all();
    if (!binary || row.sum() != 1.0) {
      throw ArgumentError("party " + std::to_string(party.party_id) + ": label row " +
                          std::to_string(i) + " is not one-hot");
    }
  }
}

PartyDataset MakeParty(const Matrix& x, std::span<const Label> labels, Eigen::Index num_classes,
                       PartyId party_id) {
  PartyDataset party{x, OneHot(labels, num_classes), party_id};
  ValidateParty(party);
  return party;
}

AnchorData GenerateAnchor(Eigen::Index m, Eigen::Index r, double feature_lo, double feature_hi,
                          Seed seed) {
  if (r < 1 || m < 1) throw ArgumentError("generate_anchor: r and m must be >= 1");
  if (!(feature_lo < feature_hi)) {
    throw ArgumentError("generate_anchor: feature_lo must be < feature_hi");
  }
  Rng rng(seed);
  return AnchorData{Uniform(r, m, feature_lo, feature_hi, rng)};
}

IntermediateRep UserEncode(const PartyDataset& party, const LinearMap& map,
                           const AnchorData& anchor) {
  ValidateParty(party);
  return IntermediateRep{Apply(map, party.x), Apply(map, anchor.x_anc), party.y,
                         party.party_id};
}

CollaborationMap AnalystIntegrate(std::span<const IntermediateRep> reps,
                                  Eigen::Index target_dim) {
  if (reps.empty()) throw ArgumentError("analyst_integrate: no intermediate representations");
  const Eigen::Index r = reps.front().x_tilde_anc.rows();
  std::vector<Matrix> anchors;
  anchors.reserve(reps.size());
  for (const IntermediateRep& rep : reps) {
    if (rep.x_tilde_anc.rows() != r) {
      throw ArgumentError("analyst_integrate: anchor row counts differ between parties");
    }
    if (target_dim < 1 || target_dim > rep.x_tilde_anc.cols()) {
      throw ArgumentError("analyst_integrate: target_dim " + std::to_string(target_dim) +
                          " outside [1, " + std::to_string(rep.x_tilde_anc.cols()) + "]");
    }
    anchors.push_back(rep.x_tilde_anc);
  }
  const Matrix stacked = HStack(anchors);
  if (target_dim > std::min(stacked.rows(), stacked.cols())) {
    throw ArgumentError("analyst_integrate: target_dim exceeds anchor rank bound");
  }

  const SvdResult s = Svd(stacked);
  const double cutoff = DefaultRcond(stacked) * s.singular_values(0);
  const Eigen::Index rank = (s.singular_values.array() > cutoff).count();
  if (rank < target_dim) {
    throw DegenerateError("analyst_integrate: concatenated anchor encodings have rank " +
                          std::to_string(rank) + " < target_dim " +
                          std::to_string(target_dim));
  }

  const Eigen::Index full = s.singular_values.size();
  CollaborationMap out;
  out.z = s.u.leftCols(target_dim);
  out.sigma_kept_norm = s.singular_values.head(target_dim).norm();
  out.sigma_discarded_norm = s.singular_values.tail(full - target_dim).norm();
  out.g.reserve(reps.size());
  for (const IntermediateRep& rep : reps) out.g.push_back(LeastSquares(rep.x_tilde_anc, out.z));
  return out;
}

std::pair<Matrix, Matrix> AssembleCollaboration(std::span<const IntermediateRep> reps,
                                                const CollaborationMap& collaboration) {
  if (collaboration.g.size() != reps.size()) {
    throw ArgumentError("assemble_collaboration: " + std::to_string(collaboration.g.size()) +
                        " alignment maps for " + std::to_string(reps.size()) + " parties");
  }
  std::vector<Matrix> features;
  std::vector<Matrix> targets;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (reps[i].x_tilde.cols() != collaboration.g[i].rows()) {
      throw ArgumentError("assemble_collaboration: party " + std::to_string(i) +
                          " dimension mismatch");
    }
    features.push_back(reps[i].x_tilde * collaboration.g[i]);
    targets.push_back(reps[i].y);
  }
  return {VStack(features), VStack(targets)};
}

TrainedPipeline TrainPipeline(std::span<const PartyDataset> parties,
                              std::span<const LinearMap> maps, const AnchorData& anchor,
                              const PipelineOptions& options) {
  if (parties.empty()) throw ArgumentError("train_pipeline: no parties");
  if (parties.size() != maps.size()) {
    throw ArgumentError("train_pipeline: " + std::to_string(parties.size()) + " parties but " +
                        std::to_string(maps.size()) + " maps");
  }
  for (const PartyDataset& party : parties) {
    if (party.size() == 0) {
      throw ArgumentError("train_pipeline: party " + std::to_string(party.party_id) +
                          " has no samples");
    }
  }
  const Eigen::Index target_dim =
      options.target_dim > 0 ? options.target_dim : maps.front().output_dim();

  // User side.
  std::vector<IntermediateRep> reps;
  reps.reserve(parties.size());
  for (std::size_t i = 0; i < parties.size(); ++i) {
    reps.push_back(UserEncode(parties[i], maps[i], anchor));
  }

  // Analyst side.
  CollaborationMap collaboration = AnalystIntegrate(reps, target_dim);
  auto [x_hat, y] = AssembleCollaboration(reps, collaboration);
  KernelModel model = FitKrr(x_hat, y, options.lambda, options.knn_k);

  std::ostringstream echo;
  echo << "parties=" << parties.size() << "\nanchor_rows=" << anchor.x_anc.rows()
       << "\ncollab_dim=" << target_dim << "\nlambda=" << options.lambda
       << "\nknn_k=" << options.knn_k << "\n";

  TrainedPipeline out{{}, {maps.begin(), maps.end()}, std::move(collaboration),
                      std::move(model), echo.str()};
  for (const PartyDataset& party : parties) out.party_ids.push_back(party.party_id);
  return out;
}

Matrix Predict(const TrainedPipeline& pipeline, PartyId party_id, const Matrix& x_test) {
  const auto it = std::find(pipeline.party_ids.begin(), pipeline.party_ids.end(), party_id);
  if (it == pipeline.party_ids.end()) {
    throw ArgumentError("predict: unknown party id " + std::to_string(party_id));
  }
  const auto index = static_cast<std::size_t>(it - pipeline.party_ids.begin());
  const Matrix x_hat = Apply(pipeline.maps[index], x_test) * pipeline.collaboration.g[index];
  return PredictScores(pipeline.model, x_hat);
}

KernelModel CentralizedBaseline(const Matrix& x, const Matrix& y, const Matrix& dr,
                                double lambda, Eigen::Index knn_k) {
  if (x.cols() != dr.rows()) {
    throw ArgumentError("centralized_baseline: data has " + std::to_string(x.cols()) +
                        " features, reduction expects " + std::to_string(dr.rows()));
  }
  return FitKrr(x * dr, y, lambda, knn_k);
}

KernelModel IndividualBaseline(const PartyDataset& party, const LinearMap& map, double lambda,
                               Eigen::Index knn_k) {
  ValidateParty(party);
  return FitKrr(Apply(map, party.x), party.y, lambda, knn_k);
}

std::vector<Matrix> CombinedMaps(const TrainedPipeline& pipeline) {
  std::vector<Matrix> out;
  out.reserve(pipeline.maps.size());
  for (std::size_t i = 0; i < pipeline.maps.size(); ++i) {
    out.push_back(pipeline.maps[i].f_matrix() * pipeline.collaboration.g[i]);
  }
  return out;
}

}  // namespace datacollab
