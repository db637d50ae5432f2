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

#include "datacollab/mappings.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "datacollab/errors.hpp"

namespace datacollab {

std::string_view ToString(MapKind kind) {
  switch (kind) {
    case MapKind::kPca:
      return "pca";
    case MapKind::kRandomProjection:
      return "random_projection";
    case MapKind::kPerturbedBasis:
      return "perturbed_basis";
    case MapKind::kCustom:
      return "custom";
  }
  return "unknown";
}

LinearMap::LinearMap(Matrix f_matrix, RowVector center, MapKind kind)
    : f_matrix_(std::move(f_matrix)), center_(std::move(center)), kind_(kind) {
  if (f_matrix_.rows() < 1 || f_matrix_.cols() < 1) {
    throw ArgumentError("linear map: empty matrix");
  }
  if (f_matrix_.cols() > f_matrix_.rows()) {
    throw ArgumentError("linear map: output dim " + std::to_string(f_matrix_.cols()) +
                        " exceeds input dim " + std::to_string(f_matrix_.rows()));
  }
  if (center_.size() != f_matrix_.rows()) {
    throw ArgumentError("linear map: center length " + std::to_string(center_.size()) +
                        " != input dim " + std::to_string(f_matrix_.rows()));
  }
  RequireFinite(f_matrix_, "linear map");
  const Eigen::Index rank = NumericalRank(f_matrix_);
  if (rank < f_matrix_.cols()) {
    throw DegenerateError("linear map: rank " + std::to_string(rank) + " < output dim " +
                          std::to_string(f_matrix_.cols()));
  }
}

LinearMap FitPca(const Matrix& x, Eigen::Index target_dim) {
  if (x.rows() < 2) throw ArgumentError("fit_pca: need at least 2 rows");
  if (target_dim < 1 || target_dim >= std::min(x.rows(), x.cols())) {
    throw ArgumentError("fit_pca: target_dim " + std::to_string(target_dim) +
                        " must be in [1, min(rows, cols))");
  }
  RequireFinite(x, "fit_pca");
  const RowVector center = x.colwise().mean();
  const Matrix centered = x.rowwise() - center;
  if (centered.cwiseAbs().maxCoeff() == 0.0) {
    throw DegenerateError("fit_pca: zero-variance data (all rows identical)");
  }
  const SvdResult s = Svd(centered);
  return LinearMap(s.v.leftCols(target_dim), center, MapKind::kPca);
}

LinearMap FitRandomProjection(Eigen::Index input_dim, Eigen::Index target_dim, Seed seed) {
  if (target_dim < 1 || target_dim >= input_dim) {
    throw ArgumentError("fit_random_projection: need 1 <= target_dim < input_dim");
  }
  Rng rng(seed);
  Matrix f = StandardNormal(input_dim, target_dim, rng) /
             std::sqrt(static_cast<double>(target_dim));
  return LinearMap(std::move(f), RowVector::Zero(input_dim), MapKind::kRandomProjection);
}

LinearMap FitPerturbedBasis(const Matrix& basis, double epsilon, Seed seed) {
  if (!(epsilon >= 0.0)) throw ArgumentError("fit_perturbed_basis: epsilon must be >= 0");
  RequireFinite(basis, "fit_perturbed_basis");
  const Eigen::Index m = basis.rows();
  const Eigen::Index reduced = basis.cols();
  Rng rng(seed);
  const Matrix mix = StandardNormal(reduced, reduced, rng);
  const Matrix noise = StandardNormal(m, reduced, rng);
  Matrix f = basis * mix + epsilon * basis.norm() * noise;
  return LinearMap(std::move(f), RowVector::Zero(m), MapKind::kPerturbedBasis);
}

Matrix Apply(const LinearMap& map, const Matrix& x) {
  if (x.cols() != map.input_dim()) {
    throw ArgumentError("apply: input has " + std::to_string(x.cols()) +
                        " columns, map expects " + std::to_string(map.input_dim()));
  }
  return x * map.f_matrix();
}

Matrix Reconstruct(const LinearMap& map, const Matrix& x_tilde) {
  if (x_tilde.cols() != map.output_dim()) {
    throw ArgumentError("reconstruct: input has " + std::to_string(x_tilde.cols()) +
                        " columns, map output dim is " + std::to_string(map.output_dim()));
  }
  const Matrix& f = map.f_matrix();
  const Matrix f_pinv = PseudoInverse(f);
  // mu^T (I - F F^+), evaluated without forming the m x m projector.
  const RowVector offset = map.center() - (map.center() * f) * f_pinv;
  Matrix out = x_tilde * f_pinv;
  out.rowwise() += offset;
  return out;
}

}  // namespace datacollab
