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

#include <gtest/gtest.h>

#include "datacollab/errors.hpp"
#include "test_support.hpp"

namespace datacollab {
namespace {

using testing::RandomMatrix;

// Sum of squared row residuals after reconstruct(apply(x)).
double ReconstructionError(const LinearMap& map, const Matrix& x) {
  return (Reconstruct(map, Apply(map, x)) - x).squaredNorm();
}

TEST(FitPcaTest, OffsetLineReconstructsExactly) {
  Matrix x(6, 2);
  for (int i = 0; i < 6; ++i) {
    x(i, 0) = 5.0 + 2.0 * i;
    x(i, 1) = -3.0 + 1.0 * i;
  }
  const LinearMap map = FitPca(x, 1);
  const Matrix back = Reconstruct(map, Apply(map, x));
  EXPECT_LE((back - x).rowwise().norm().maxCoeff(), 1e-10);
  EXPECT_EQ(map.kind(), MapKind::kPca);
  EXPECT_LE((map.center() - x.colwise().mean()).norm(), 1e-14);
}

TEST(FitPcaTest, RankThreeData) {
  Matrix x = RandomMatrix(50, 3, 1) * RandomMatrix(3, 10, 2);
  x.rowwise() += RandomMatrix(1, 10, 3).row(0);
  const LinearMap map = FitPca(x, 3);
  EXPECT_EQ(map.output_dim(), 3);
  EXPECT_LE(ReconstructionError(map, x), 1e-8);
}

TEST(FitPcaTest, MnistShapedMapHasFullRank) {
  const Matrix x = RandomMatrix(60, 784, 4).cwiseAbs();
  const LinearMap map = FitPca(x, 25);
  EXPECT_EQ(map.input_dim(), 784);
  EXPECT_EQ(NumericalRank(map.f_matrix()), 25);
}

TEST(FitPcaTest, Errors) {
  const Matrix x = RandomMatrix(5, 4, 5);
  EXPECT_THROW(FitPca(x, 4), ArgumentError);
  EXPECT_THROW(FitPca(x.topRows(1), 0), ArgumentError);
  EXPECT_THROW(FitPca(Matrix::Constant(5, 4, 2.0), 2), DegenerateError);
}

TEST(FitPcaTest, OptimalAgainstRandomAlternatives) {
  Matrix x = RandomMatrix(40, 8, 6);
  x.col(0) *= 5.0;
  x.col(3) *= 3.0;
  const LinearMap pca = FitPca(x, 3);
  const double best = ReconstructionError(pca, x);
  for (Seed seed = 0; seed < 50; ++seed) {
    const LinearMap alt(RandomMatrix(8, 3, 100 + seed), pca.center(), MapKind::kCustom);
    EXPECT_LE(best, ReconstructionError(alt, x) + 1e-9);
  }
}

TEST(RandomProjectionTest, DeterministicAndSeedSensitive) {
  const LinearMap a = FitRandomProjection(10, 3, 42);
  const LinearMap b = FitRandomProjection(10, 3, 42);
  const LinearMap c = FitRandomProjection(10, 3, 43);
  EXPECT_EQ(a.f_matrix(), b.f_matrix());
  EXPECT_NE(a.f_matrix(), c.f_matrix());
  EXPECT_EQ(a.center().norm(), 0.0);
  EXPECT_EQ(a.kind(), MapKind::kRandomProjection);
}

TEST(RandomProjectionTest, FullRankAtMnistSize) {
  EXPECT_EQ(NumericalRank(FitRandomProjection(784, 25, 7).f_matrix()), 25);
  EXPECT_THROW(FitRandomProjection(5, 5, 1), ArgumentError);
}

TEST(PerturbedBasisTest, ZeroEpsilonKeepsRange) {
  const Matrix basis = FitPca(RandomMatrix(30, 12, 8), 4).f_matrix();
  const LinearMap a = FitPerturbedBasis(basis, 0.0, 1);
  const LinearMap b = FitPerturbedBasis(basis, 0.0, 2);
  const Matrix outside = a.f_matrix() - basis * (basis.transpose() * a.f_matrix());
  EXPECT_LE(outside.norm(), 1e-10 * a.f_matrix().norm());
  EXPECT_NE(a.f_matrix(), b.f_matrix());
  EXPECT_EQ(a.kind(), MapKind::kPerturbedBasis);
}

TEST(PerturbedBasisTest, FormulaOnIdentityBasis) {
  const Matrix basis = Matrix::Identity(3, 3);
  const LinearMap map = FitPerturbedBasis(basis, 1.0, 9);
  // Replay the documented draw order: E1 (m~ x m~) then E2 (m x m~).
  Rng rng(9);
  const Matrix e1 = StandardNormal(3, 3, rng);
  const Matrix e2 = StandardNormal(3, 3, rng);
  const Matrix expected = basis * e1 + basis.norm() * e2;
  EXPECT_LE((map.f_matrix() - expected).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_GT((map.f_matrix() - e1).norm(), 0.0);
  EXPECT_THROW(FitPerturbedBasis(basis, -1.0, 9), ArgumentError);
}

TEST(ApplyTest, CoordinateSelection) {
  const Matrix x = RandomMatrix(4, 5, 10);
  const LinearMap map(Matrix::Identity(5, 2), RowVector::Zero(5), MapKind::kCustom);
  EXPECT_EQ(Apply(map, x), x.leftCols(2));
  EXPECT_EQ(Apply(map, Matrix::Zero(3, 5)), Matrix::Zero(3, 2));
}

TEST(ApplyTest, MatchesNaiveMultiply) {
  const Matrix x = RandomMatrix(7, 6, 11);
  const LinearMap map(RandomMatrix(6, 3, 12), RowVector::Zero(6), MapKind::kCustom);
  EXPECT_LE((Apply(map, x) - testing::NaiveMultiply(x, map.f_matrix())).cwiseAbs().maxCoeff(),
            1e-12);
  EXPECT_THROW(Apply(map, RandomMatrix(2, 5, 1)), ArgumentError);
}

TEST(ReconstructTest, SquareInvertibleMapIsExact) {
  const Matrix x = RandomMatrix(9, 4, 13);
  const LinearMap map(RandomMatrix(4, 4, 14), RandomMatrix(1, 4, 15).row(0), MapKind::kCustom);
  EXPECT_LE((Reconstruct(map, Apply(map, x)) - x).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ReconstructTest, OrthonormalMapIsOrthogonalProjection) {
  const Matrix q = Eigen::HouseholderQR<Matrix>(RandomMatrix(6, 2, 16)).householderQ() *
                   Matrix::Identity(6, 2);
  const LinearMap map(q, RowVector::Zero(6), MapKind::kCustom);
  const Matrix x = RandomMatrix(5, 6, 17);
  const Matrix residual = x - Reconstruct(map, Apply(map, x));
  EXPECT_LE((residual * q).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ReconstructTest, CenterIsFixedPoint) {
  const Matrix x = RandomMatrix(20, 5, 18);
  const LinearMap map = FitPca(x, 2);
  const Matrix mu = map.center();
  EXPECT_LE((Reconstruct(map, Apply(map, mu)) - mu).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ReconstructTest, Idempotent) {
  const Matrix x = RandomMatrix(15, 7, 19);
  const LinearMap map = FitPca(x, 3);
  const Matrix once = Reconstruct(map, Apply(map, x));
  const Matrix twice = Reconstruct(map, Apply(map, once));
  EXPECT_LE((twice - once).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_THROW(Reconstruct(map, RandomMatrix(2, 4, 1)), ArgumentError);
}

TEST(LinearMapTest, Invariants) {
  Matrix f = RandomMatrix(5, 2, 20);
  f.col(1) = f.col(0);
  EXPECT_THROW(LinearMap(f, RowVector::Zero(5), MapKind::kCustom), DegenerateError);
  EXPECT_THROW(LinearMap(RandomMatrix(5, 2, 21), RowVector::Zero(4), MapKind::kCustom),
               ArgumentError);
  EXPECT_THROW(LinearMap(RandomMatrix(2, 3, 22), RowVector::Zero(2), MapKind::kCustom),
               ArgumentError);
  EXPECT_EQ(ToString(MapKind::kPca), "pca");
}

}  // namespace
}  // namespace datacollab
