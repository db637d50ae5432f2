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

#ifndef DATACOLLAB_MAPPINGS_HPP_
#define DATACOLLAB_MAPPINGS_HPP_

#include <string_view>

#include "datacollab/numerics.hpp"
#include "datacollab/random.hpp"

namespace datacollab {

enum class MapKind { kPca, kRandomProjection, kPerturbedBasis, kCustom };

std::string_view ToString(MapKind kind);

// A party's private linear dimensionality reduction x -> x * F.
//
// The center only enters reconstruction; Apply() never subtracts it. F has
// full column rank, checked at construction.
class LinearMap {
 public:
  // Throws DegenerateError if rank(f_matrix) < f_matrix.cols(), and
  // ArgumentError if the center length does not match f_matrix.rows() or
  // f_matrix has more columns than rows.
  LinearMap(Matrix f_matrix, RowVector center, MapKind kind);

  const Matrix& f_matrix() const { return f_matrix_; }
  const RowVector& center() const { return center_; }
  MapKind kind() const { return kind_; }

  Eigen::Index input_dim() const { return f_matrix_.rows(); }
  Eigen::Index output_dim() const { return f_matrix_.cols(); }

 private:
  Matrix f_matrix_;
  RowVector center_;
  MapKind kind_;
};

// PCA on the row-centered data: F holds the top target_dim right singular
// vectors, center is the column mean. Requires rows >= 2 and
// target_dim < min(rows, cols).
LinearMap FitPca(const Matrix& x, Eigen::Index target_dim);

// Gaussian random projection with entries N(0, 1) / sqrt(target_dim).
LinearMap FitRandomProjection(Eigen::Index input_dim, Eigen::Index target_dim, Seed seed);

// F = B * E1 + epsilon * ||B||_F * E2, with E1 (m~ x m~) and E2 (m x m~)
// standard normal. At epsilon = 0 every such map shares range(B).
LinearMap FitPerturbedBasis(const Matrix& basis, double epsilon, Seed seed);

// x * F. Requires x.cols() == map.input_dim().
Matrix Apply(const LinearMap& map, const Matrix& x);

// Best affine preimage of x_tilde given the map and its center:
//   x' = x_tilde * pinv(F) + 1 * mu^T * (I - F * pinv(F)).
Matrix Reconstruct(const LinearMap& map, const Matrix& x_tilde);

}  // namespace datacollab

#endif  // DATACOLLAB_MAPPINGS_HPP_
