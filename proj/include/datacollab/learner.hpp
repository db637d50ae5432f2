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

#ifndef DATACOLLAB_LEARNER_HPP_
#define DATACOLLAB_LEARNER_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "datacollab/numerics.hpp"

namespace datacollab {

using Label = std::int32_t;
using Labels = std::vector<Label>;

inline constexpr Eigen::Index kDefaultKnn = 7;
inline constexpr double kDefaultLambda = 0.1;

// Gaussian-kernel ridge regressor with locally scaled bandwidths:
//   K(i, j) = exp(-||a_i - b_j||^2 / (sigma_i * sigma_j)).
struct KernelModel {
  Matrix support;  // n x d training points
  Matrix dual;     // n x classes, solves (K + lambda I) dual = Y
  Vector scales;   // per support point sigma_j > 0
  double lambda = kDefaultLambda;
  Eigen::Index knn_k = kDefaultKnn;
};

// Per-row bandwidth: distance to the k-th nearest other row. A zero
// distance (duplicates) falls back to the smallest nonzero neighbor
// distance, or 1 when every row coincides. Requires k < rows.
Vector LocalScales(const Matrix& x, Eigen::Index k);

// Bandwidths for query rows against a support set: distance to the k-th
// nearest support row, skipping one exact coincidence so a query equal to a
// support row gets the same bandwidth that row was trained with. Same zero
// fallback as LocalScales.
Vector QueryScales(const Matrix& queries, const Matrix& support, Eigen::Index k);

// Pairwise squared Euclidean distances, evaluated by explicit differences.
Matrix SquaredDistances(const Matrix& a, const Matrix& b);

Matrix Gram(const Matrix& a, const Matrix& b, const Vector& scales_a, const Vector& scales_b);

// Solves (K + lambda I) A = Y with a Cholesky factorization.
KernelModel FitKrr(const Matrix& x, const Matrix& y_onehot, double lambda = kDefaultLambda,
                   Eigen::Index knn_k = kDefaultKnn);

// Score matrix (rows x classes). Zero query rows give an empty result.
Matrix PredictScores(const KernelModel& model, const Matrix& x);

// Row-wise argmax; ties go to the lowest class index.
Labels Classify(const Matrix& scores);

Matrix OneHot(std::span<const Label> labels, Eigen::Index num_classes);

// 2 I(A;B) / (H(A) + H(B)) from empirical joint counts, natural log.
// Returns 1 when both labelings are constant.
double Nmi(std::span<const Label> a, std::span<const Label> b);

double Accuracy(std::span<const Label> predicted, std::span<const Label> truth);

}  // namespace datacollab

#endif  // DATACOLLAB_LEARNER_HPP_
