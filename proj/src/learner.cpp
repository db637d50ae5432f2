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

#include "datacollab/learner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "datacollab/errors.hpp"

namespace datacollab {
namespace {

// k-th smallest entry of `dists` (1-based k) after removing up to
// `skip_zeros` exact zeros, with the zero-distance fallback applied.
double KthDistance(std::vector<double>& dists, Eigen::Index k, int skip_zeros) {
  const auto zeros = std::count(dists.begin(), dists.end(), 0.0);
  const auto skipped = std::min<std::ptrdiff_t>(skip_zeros, zeros);
  const auto available = static_cast<std::ptrdiff_t>(dists.size()) - skipped;
  if (available < k) {
    throw ArgumentError("local scaling: only " + std::to_string(available) +
                        " neighbors for k=" + std::to_string(k));
  }
  const auto nth = dists.begin() + skipped + (k - 1);
  std::nth_element(dists.begin(), nth, dists.end());
  if (*nth > 0.0) return *nth;
  double smallest = 0.0;
  for (double d : dists) {
    if (d > 0.0 && (smallest == 0.0 || d < smallest)) smallest = d;
  }
  return smallest > 0.0 ? smallest : 1.0;
}

}  // namespace

Matrix SquaredDistances(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) {
    throw ArgumentError("squared_distances: column mismatch " + std::to_string(a.cols()) +
                        " vs " + std::to_string(b.cols()));
  }
  // Points as columns keeps the inner loop contiguous.
  const Matrix at = a.transpose();
  const Matrix bt = b.transpose();
  Matrix out(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < bt.cols(); ++j) {
    out.col(j) = (at.colwise() - bt.col(j)).colwise().squaredNorm().transpose();
  }
  return out;
}

Vector LocalScales(const Matrix& x, Eigen::Index k) {
  if (k < 1 || k >= x.rows()) {
    throw ArgumentError("local_scales: need 1 <= k < rows (k=" + std::to_string(k) +
                        ", rows=" + std::to_string(x.rows()) + ")");
  }
  const Matrix d2 = SquaredDistances(x, x);
  Vector scales(x.rows());
  std::vector<double> row(static_cast<std::size_t>(x.rows() - 1));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    std::size_t n = 0;
    for (Eigen::Index j = 0; j < x.rows(); ++j) {
      if (j != i) row[n++] = std::sqrt(d2(i, j));
    }
    scales(i) = KthDistance(row, k, 0);
  }
  return scales;
}

Vector QueryScales(const Matrix& queries, const Matrix& support, Eigen::Index k) {
  if (k < 1 || k > support.rows()) {
    throw ArgumentError("query_scales: need 1 <= k <= support rows");
  }
  const Matrix d2 = SquaredDistances(queries, support);
  Vector scales(queries.rows());
  std::vector<double> row(static_cast<std::size_t>(support.rows()));
  for (Eigen::Index i = 0; i < queries.rows(); ++i) {
    for (Eigen::Index j = 0; j < support.rows(); ++j) {
      row[static_cast<std::size_t>(j)] = std::sqrt(d2(i, j));
    }
    const bool coincides = *std::min_element(row.begin(), row.end()) == 0.0;
    if (coincides && support.rows() <= k) {
      throw ArgumentError("query_scales: not enough support rows besides the coincident one");
    }
    scales(i) = KthDistance(row, k, coincides ? 1 : 0);
  }
  return scales;
}

Matrix Gram(const Matrix& a, const Matrix& b, const Vector& scales_a, const Vector& scales_b) {
  if (scales_a.size() != a.rows() || scales_b.size() != b.rows()) {
    throw ArgumentError("gram: scale vector length mismatch");
  }
  const Matrix d2 = SquaredDistances(a, b);
  const Matrix denom = scales_a * scales_b.transpose();
  return (-d2.array() / denom.array()).exp().matrix();
}

KernelModel FitKrr(const Matrix& x, const Matrix& y_onehot, double lambda, Eigen::Index knn_k) {
  if (!(lambda > 0.0)) throw ArgumentError("fit_krr: lambda must be positive");
  if (x.rows() != y_onehot.rows()) {
    throw ArgumentError("fit_krr: " + std::to_string(x.rows()) + " samples but " +
                        std::to_string(y_onehot.rows()) + " target rows");
  }
  if (x.rows() < 2) throw ArgumentError("fit_krr: need at least 2 samples");
  RequireFinite(x, "fit_krr");

  Vector scales = LocalScales(x, knn_k);
  Matrix k = Gram(x, x, scales, scales);
  if (!k.allFinite()) throw NumericError("fit_krr: kernel matrix is not finite");
  k.diagonal().array() += lambda;

  Eigen::LLT<Matrix> chol(k);
  if (chol.info() != Eigen::Success) {
    throw NumericError("fit_krr: K + lambda I is not positive definite");
  }
  Matrix dual = chol.solve(y_onehot);
  if (!dual.allFinite()) throw NumericError("fit_krr: solve produced non-finite values");
  return KernelModel{x, std::move(dual), std::move(scales), lambda, knn_k};
}

Matrix PredictScores(const KernelModel& model, const Matrix& x) {
  if (x.cols() != model.support.cols()) {
    throw ArgumentError("predict_scores: input has " + std::to_string(x.cols()) +
                        " columns, model expects " + std::to_string(model.support.cols()));
  }
  if (x.rows() == 0) return Matrix(0, model.dual.cols());
  const Vector query_scales = QueryScales(x, model.support, model.knn_k);
  return Gram(x, model.support, query_scales, model.scales) * model.dual;
}

Labels Classify(const Matrix& scores) {
  Labels out(static_cast<std::size_t>(scores.rows()));
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < scores.cols(); ++j) {
      if (scores(i, j) > scores(i, best)) best = j;
    }
    out[static_cast<std::size_t>(i)] = static_cast<Label>(best);
  }
  return out;
}

Matrix OneHot(std::span<const Label> labels, Eigen::Index num_classes) {
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(labels.size()), num_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes) {
      throw ArgumentError("one_hot: label " + std::to_string(labels[i]) + " out of range");
    }
    out(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
  }
  return out;
}

double Nmi(std::span<const Label> a, std::span<const Label> b) {
  if (a.size() != b.size()) throw ArgumentError("nmi: length mismatch");
  if (a.empty()) throw ArgumentError("nmi: empty labelings");

  std::map<Label, double> count_a;
  std::map<Label, double> count_b;
  std::map<std::pair<Label, Label>, double> joint;
  for (std::size_t i = 0; i < a.size(); ++i) {
    count_a[a[i]] += 1.0;
    count_b[b[i]] += 1.0;
    joint[{a[i], b[i]}] += 1.0;
  }
  const double n = static_cast<double>(a.size());
  auto entropy = [n](const std::map<Label, double>& counts) {
    double h = 0.0;
    for (const auto& [label, c] : counts) h -= (c / n) * std::log(c / n);
    return h;
  };
  const double h_a = entropy(count_a);
  const double h_b = entropy(count_b);
  if (h_a + h_b == 0.0) return 1.0;

  // A one-to-one contingency table is the same partition; return 1 exactly
  // rather than a rounded ratio of two equal sums.
  const bool bijective =
      joint.size() == count_a.size() && joint.size() == count_b.size();
  if (bijective) return 1.0;

  double mutual = 0.0;
  for (const auto& [key, c] : joint) {
    const double p = c / n;
    mutual += p * std::log(p / ((count_a[key.first] / n) * (count_b[key.second] / n)));
  }
  return std::clamp(2.0 * mutual / (h_a + h_b), 0.0, 1.0);
}

double Accuracy(std::span<const Label> predicted, std::span<const Label> truth) {
  if (predicted.size() != truth.size()) throw ArgumentError("accuracy: length mismatch");
  if (predicted.empty()) throw ArgumentError("accuracy: empty labelings");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) hits += predicted[i] == truth[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

}  // namespace datacollab
