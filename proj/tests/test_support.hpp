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

// Independent oracles for tests. Nothing here calls the library's
// factorizations: plain loops and textbook elimination only.

#ifndef DATACOLLAB_TESTS_TEST_SUPPORT_HPP_
#define DATACOLLAB_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "datacollab/dataset.hpp"
#include "datacollab/numerics.hpp"
#include "datacollab/random.hpp"

namespace datacollab::testing {

inline Matrix NaiveMultiply(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      double acc = 0.0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

inline Matrix NaiveTranspose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  }
  return out;
}

// Solves the square system m x = rhs by Gauss-Jordan elimination with
// partial pivoting.
inline Matrix GaussSolve(Matrix m, Matrix rhs) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    }
    if (m(pivot, col) == 0.0) throw std::runtime_error("singular system");
    m.row(col).swap(m.row(pivot));
    rhs.row(col).swap(rhs.row(pivot));
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m(r, col) / m(col, col);
      for (Eigen::Index c = col; c < n; ++c) m(r, c) -= f * m(col, c);
      for (Eigen::Index c = 0; c < rhs.cols(); ++c) rhs(r, c) -= f * rhs(col, c);
    }
  }
  for (Eigen::Index r = 0; r < n; ++r) rhs.row(r) /= m(r, r);
  return rhs;
}

// argmin ||a x - b||_F for full-column-rank a via a^T a x = a^T b.
inline Matrix NormalEquationsSolve(const Matrix& a, const Matrix& b) {
  const Matrix at = NaiveTranspose(a);
  return GaussSolve(NaiveMultiply(at, a), NaiveMultiply(at, b));
}

inline double RelativeFrobenius(const Matrix& got, const Matrix& want) {
  return (got - want).norm() / std::max(want.norm(), 1e-300);
}

inline Matrix RandomMatrix(Eigen::Index rows, Eigen::Index cols, Seed seed) {
  Rng rng(seed);
  return StandardNormal(rows, cols, rng);
}

// Columns agree up to a per-column sign flip.
inline bool EqualUpToColumnSigns(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double same = (a.col(j) - b.col(j)).cwiseAbs().maxCoeff();
    const double flipped = (a.col(j) + b.col(j)).cwiseAbs().maxCoeff();
    if (std::min(same, flipped) > tol) return false;
  }
  return true;
}

// Distances from each row to every other row, sorted, by direct loops.
inline std::vector<double> SortedNeighborDistances(const Matrix& x, Eigen::Index row) {
  std::vector<double> d;
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    if (j == row) continue;
    double s = 0.0;
    for (Eigen::Index c = 0; c < x.cols(); ++c) s += (x(row, c) - x(j, c)) * (x(row, c) - x(j, c));
    d.push_back(std::sqrt(s));
  }
  std::sort(d.begin(), d.end());
  return d;
}

// Three well separated 2-D-ish Gaussian blobs in `dim` dimensions.
inline LabeledData Blobs(Eigen::Index per_class, Eigen::Index dim, Seed seed) {
  return GenerateSynthetic(3, per_class, dim, 10.0, seed);
}

}  // namespace datacollab::testing

#endif  // DATACOLLAB_TESTS_TEST_SUPPORT_HPP_
