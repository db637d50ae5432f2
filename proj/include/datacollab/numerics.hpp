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

#ifndef DATACOLLAB_NUMERICS_HPP_
#define DATACOLLAB_NUMERICS_HPP_

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string_view>

namespace datacollab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

// Thin singular value decomposition a = u * diag(singular_values) * v^T.
//
// Singular values are sorted nonincreasing. Each left singular vector is
// sign-normalized so that its largest-magnitude entry (first one on ties)
// is nonnegative; the matching right vector is flipped with it.
struct SvdResult {
  Matrix u;
  Vector singular_values;
  Matrix v;
  // Frobenius norm of the singular values that were dropped by
  // truncated_svd(); zero for a full thin SVD.
  double discarded_norm = 0.0;
};

// Throws ArgumentError when any entry is NaN or infinite.
void RequireFinite(const Matrix& a, std::string_view what);

// Thin SVD with min(rows, cols) triplets. Throws NumericError if the
// factorization fails to converge or produces non-finite factors.
SvdResult Svd(const Matrix& a);

// Leading k triplets of Svd(a); discarded_norm holds ||sigma_{k+1:}||_2.
// Requires 1 <= k <= min(rows, cols).
SvdResult TruncatedSvd(const Matrix& a, Eigen::Index k);

// Default rank cutoff used by PseudoInverse/LeastSquares:
// max(rows, cols) * machine epsilon.
double DefaultRcond(const Matrix& a);

// Moore-Penrose inverse. Singular values <= rcond * sigma_max are treated
// as zero. rcond defaults to DefaultRcond(a).
Matrix PseudoInverse(const Matrix& a, std::optional<double> rcond = std::nullopt);

// Minimum-norm minimizer of ||a x - b||_F, computed as pinv(a) * b.
Matrix LeastSquares(const Matrix& a, const Matrix& b,
                    std::optional<double> rcond = std::nullopt);

// Numerical rank: count of singular values > rcond * sigma_max.
Eigen::Index NumericalRank(const Matrix& a, std::optional<double> rcond = std::nullopt);

// Vertical and horizontal concatenation helpers. All blocks must agree on
// the shared dimension.
Matrix VStack(std::span<const Matrix> blocks);
Matrix HStack(std::span<const Matrix> blocks);

}  // namespace datacollab

#endif  // DATACOLLAB_NUMERICS_HPP_
