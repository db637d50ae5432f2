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

#include "datacollab/numerics.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "datacollab/errors.hpp"

namespace datacollab {

void RequireFinite(const Matrix& a, std::string_view what) {
  if (!a.allFinite()) {
    throw ArgumentError(std::string(what) + ": matrix contains NaN or Inf");
  }
}

SvdResult Svd(const Matrix& a) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw ArgumentError("svd: matrix must have at least one row and column");
  }
  RequireFinite(a, "svd");

  // BDCSVD falls back to two-sided Jacobi below its block size, so small
  // problems get Jacobi accuracy and large ones divide-and-conquer speed.
  Eigen::BDCSVD<Matrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) {
    throw NumericError("svd: factorization did not converge");
  }

  SvdResult out{solver.matrixU(), solver.singularValues(), solver.matrixV(), 0.0};
  if (!out.u.allFinite() || !out.v.allFinite() || !out.singular_values.allFinite()) {
    throw NumericError("svd: factorization produced non-finite values");
  }

  for (Eigen::Index j = 0; j < out.u.cols(); ++j) {
    Eigen::Index pivot = 0;
    out.u.col(j).cwiseAbs().maxCoeff(&pivot);
    if (out.u(pivot, j) < 0.0) {
      out.u.col(j) *= -1.0;
      out.v.col(j) *= -1.0;
    }
  }
  return out;
}

SvdResult TruncatedSvd(const Matrix& a, Eigen::Index k) {
  const Eigen::Index full = std::min(a.rows(), a.cols());
  if (k < 1 || k > full) {
    throw ArgumentError("truncated_svd: k=" + std::to_string(k) + " outside [1, " +
                        std::to_string(full) + "]");
  }
  SvdResult s = Svd(a);
  const double discarded = s.singular_values.tail(full - k).norm();
  return SvdResult{s.u.leftCols(k), s.singular_values.head(k), s.v.leftCols(k), discarded};
}

double DefaultRcond(const Matrix& a) {
  return static_cast<double>(std::max(a.rows(), a.cols())) *
         std::numeric_limits<double>::epsilon();
}

Matrix PseudoInverse(const Matrix& a, std::optional<double> rcond) {
  const double cutoff_ratio = rcond.value_or(DefaultRcond(a));
  if (cutoff_ratio < 0.0) {
    throw ArgumentError("pseudo_inverse: rcond must be nonnegative");
  }
  const SvdResult s = Svd(a);
  const double cutoff = cutoff_ratio * s.singular_values(0);
  Vector inv = Vector::Zero(s.singular_values.size());
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    if (s.singular_values(i) > cutoff) inv(i) = 1.0 / s.singular_values(i);
  }
  return s.v * inv.asDiagonal() * s.u.transpose();
}

Matrix LeastSquares(const Matrix& a, const Matrix& b, std::optional<double> rcond) {
  if (a.rows() != b.rows()) {
    throw ArgumentError("least_squares: a has " + std::to_string(a.rows()) +
                        " rows but b has " + std::to_string(b.rows()));
  }
  return PseudoInverse(a, rcond) * b;
}

Eigen::Index NumericalRank(const Matrix& a, std::optional<double> rcond) {
  const SvdResult s = Svd(a);
  const double cutoff = rcond.value_or(DefaultRcond(a)) * s.singular_values(0);
  return (s.singular_values.array() > cutoff).count();
}

Matrix VStack(std::span<const Matrix> blocks) {
  if (blocks.empty()) throw ArgumentError("vstack: no blocks");
  const Eigen::Index cols = blocks.front().cols();
  Eigen::Index rows = 0;
  for (const Matrix& b : blocks) {
    if (b.cols() != cols) throw ArgumentError("vstack: column count mismatch");
    rows += b.rows();
  }
  Matrix out(rows, cols);
  Eigen::Index offset = 0;
  for (const Matrix& b : blocks) {
    out.middleRows(offset, b.rows()) = b;
    offset += b.rows();
  }
  return out;
}

Matrix HStack(std::span<const Matrix> blocks) {
  if (blocks.empty()) throw ArgumentError("hstack: no blocks");
  const Eigen::Index rows = blocks.front().rows();
  Eigen::Index cols = 0;
  for (const Matrix& b : blocks) {
    if (b.rows() != rows) throw ArgumentError("hstack: row count mismatch");
    cols += b.cols();
  }
  Matrix out(rows, cols);
  Eigen::Index offset = 0;
  for (const Matrix& b : blocks) {
    out.middleCols(offset, b.cols()) = b;
    offset += b.cols();
  }
  return out;
}

}  // namespace datacollab
