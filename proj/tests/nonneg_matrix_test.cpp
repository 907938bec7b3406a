// Copyright 2026 The Fixpoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fixpoint/nonneg_matrix.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixpoint/coupled_tripled.hpp"
#include "fixpoint/error.hpp"
#include "fixpoint/norms.hpp"
#include "support/oracles.hpp"

namespace fixpoint {
namespace {

using testing::eigen_spectral_radius;
using testing::permutation_det;

const NonnegativeMatrix kSym{{0.5, 0.25}, {0.25, 0.5}};

TEST(NonnegativeMatrixTest, RejectsNegativeAndNonFinite) {
  EXPECT_THROW(NonnegativeMatrix({{0.5, -0.1}, {0.0, 0.0}}), Error);
  EXPECT_THROW(NonnegativeMatrix({{NAN}}), Error);
  EXPECT_THROW(NonnegativeMatrix(Matrix(0)), Error);
}

TEST(MatkowskiEliminateTest, ZeroMatrixGivesUnitPivots) {
  const auto t = matkowski_eliminate(NonnegativeMatrix::zero(2));
  ASSERT_TRUE(t.complete());
  EXPECT_EQ(t.pivots, (std::vector<double>{1.0, 1.0}));
  for (const auto& stage : t.stages)
    for (std::size_t i = 0; i < stage.size(); ++i)
      for (std::size_t j = 0; j < stage.size(); ++j)
        if (i != j) EXPECT_EQ(stage(i, j), 0.0);
}

TEST(MatkowskiEliminateTest, IdentityStopsAtFirstStage) {
  const auto t = matkowski_eliminate(NonnegativeMatrix::identity(2));
  EXPECT_FALSE(t.complete());
  ASSERT_EQ(t.pivots.size(), 1u);
  EXPECT_EQ(t.pivots[0], 0.0);
  EXPECT_EQ(t.stages.size(), 1u);
}

TEST(MatkowskiEliminateTest, RawRecursionMatchesDeterminant) {
  NormalityOptions raw;
  raw.rescale = false;
  const auto t = matkowski_eliminate(kSym, raw);
  ASSERT_TRUE(t.complete());
  EXPECT_DOUBLE_EQ(t.pivots[0], 0.5);
  EXPECT_DOUBLE_EQ(t.pivots[1], 0.1875);
  // Oracle: det(I - A) for the 2x2 case equals the second raw pivot.
  EXPECT_DOUBLE_EQ(permutation_det(testing::i_minus(kSym.matrix())), 0.1875);
  EXPECT_FALSE(t.scaled);
}

TEST(MatkowskiEliminateTest, TableInvariants) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const NonnegativeMatrix a(0.3 * testing::random_nonnegative(rng, n));
    const auto t = matkowski_eliminate(a);
    // Stage 1 is the b01 transform of A.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        EXPECT_EQ(t.stages[0](i, j), i == j ? 1.0 - a(i, j) : a(i, j));
    for (const auto& stage : t.stages)
      for (std::size_t i = 0; i < stage.size(); ++i)
        for (std::size_t j = 0; j < stage.size(); ++j)
          if (i != j) EXPECT_GE(stage(i, j), 0.0);
    for (double s : t.sigma[0]) EXPECT_GT(s, 0.0);
  }
}

// Pivots and leading minors agree in sign for every n; see the next test for
// the value relation.
TEST(MatkowskiEliminateTest, PivotSignsMatchMinorSigns) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 6;
    Matrix m;
    const double target = (trial % 2 == 0) ? 0.8 : 1.3;
    if (!testing::random_with_radius(rng, n, target, m)) continue;
    const NonnegativeMatrix a(m);
    EXPECT_EQ(is_normal_matkowski(a), is_admissible(a)) << "trial " << trial;
  }
}

TEST(MatkowskiEliminateTest, TwoByTwoPivotEqualsMinor) {
  std::mt19937_64 rng(5);
  NormalityOptions raw;
  raw.rescale = false;
  for (int trial = 0; trial < 100; ++trial) {
    const NonnegativeMatrix a(0.4 * testing::random_nonnegative(rng, 2, 0.0));
    const auto t = matkowski_eliminate(a, raw);
    const auto minors = leading_minors(a);
    ASSERT_TRUE(t.complete());
    EXPECT_NEAR(t.pivots[0], minors[0], 1e-15);
    EXPECT_NEAR(t.pivots[1], minors[1], 1e-15);
  }
}

// The raw pivots are the Gaussian pivots Delta_k / Delta_{k-1} times a
// positive factor c_k with c_1 = 1, c_{k+1} = c_k * p_k. Equality with the
// minors therefore holds for k <= 2 only (p_3 = Delta_1 * Delta_3, ...).
TEST(MatkowskiEliminateTest, RawPivotsFollowScaledMinorRelation) {
  std::mt19937_64 rng(13);
  NormalityOptions raw;
  raw.rescale = false;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + trial % 3;
    Matrix m;
    if (!testing::random_with_radius(rng, n, 0.7, m)) continue;
    const NonnegativeMatrix a(m);
    const auto t = matkowski_eliminate(a, raw);
    const auto minors = leading_minors(a);
    ASSERT_TRUE(t.complete());
    double c = 1.0;
    double prev_minor = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double expect = c * minors[k] / prev_minor;
      EXPECT_NEAR(t.pivots[k], expect, 1e-9 * std::abs(expect)) << "k=" << k;
      c *= t.pivots[k];
      prev_minor = minors[k];
    }
    EXPECT_NEAR(t.pivots[2], minors[0] * minors[2], 1e-9 * std::abs(t.pivots[2]));
  }
}

TEST(IsNormalMatkowskiTest, Examples) {
  EXPECT_TRUE(is_normal_matkowski(NonnegativeMatrix::zero(3)));
  EXPECT_FALSE(is_normal_matkowski(NonnegativeMatrix::identity(2)));
  EXPECT_TRUE(is_normal_matkowski(tripled_matrix({0.2, 0.2, 0.2})));
}

TEST(LeadingMinorsTest, Examples) {
  const auto m = leading_minors(kSym);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_DOUBLE_EQ(m[0], 0.5);
  EXPECT_DOUBLE_EQ(m[1], 0.1875);

  for (double d : leading_minors(NonnegativeMatrix::zero(5))) EXPECT_EQ(d, 1.0);

  const auto c = leading_minors(coupled_matrix(0.8));
  EXPECT_NEAR(c[0], 0.6, 1e-15);
  EXPECT_NEAR(c[1], 0.2, 1e-15);
}

TEST(LeadingMinorsTest, AgreesWithPermutationExpansion) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n <= 7; ++n) {
    const NonnegativeMatrix a(testing::random_nonnegative(rng, n));
    const auto minors = leading_minors(a);
    const Matrix ia = testing::i_minus(a.matrix());
    for (std::size_t k = 1; k <= n; ++k) {
      const double expect = permutation_det(leading_block(ia, k));
      EXPECT_NEAR(minors[k - 1], expect, 1e-10 * std::max(1.0, std::abs(expect)))
          << "n=" << n << " k=" << k;
    }
  }
}

TEST(IsAdmissibleTest, Examples) {
  EXPECT_TRUE(is_admissible(NonnegativeMatrix::zero(2)));
  EXPECT_FALSE(is_admissible(NonnegativeMatrix({{1.2}})));
  EXPECT_TRUE(is_admissible(kSym));
}

TEST(NormalityCertificateTest, Examples) {
  const auto v1 = normality_certificate(NonnegativeMatrix({{0.5}}), Vector{1.0});
  ASSERT_TRUE(v1.certificate);
  EXPECT_DOUBLE_EQ((*v1.certificate)[0], 2.0);

  const auto v2 = normality_certificate(kSym);
  ASSERT_TRUE(v2.certificate);
  EXPECT_NEAR((*v2.certificate)[0], 4.0, 1e-14);
  EXPECT_NEAR((*v2.certificate)[1], 4.0, 1e-14);

  try {
    normality_certificate(NonnegativeMatrix::identity(2));
    FAIL() << "expected NotNormal";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotNormal);
  }
}

TEST(NormalityCertificateTest, RejectsNonpositiveRightHandSide) {
  try {
    normality_certificate(kSym, Vector{1.0, 0.0});
    FAIL() << "expected BadRightHandSide";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(NormalityCertificateTest, SoundOnRandomNormalMatrices) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> pos(0.1, 3.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 8;
    Matrix m;
    if (!testing::random_with_radius(rng, n, 0.95, m)) continue;
    const NonnegativeMatrix a(m);
    Vector y(n);
    for (double& v : y) v = pos(rng);
    const auto verdict = normality_certificate(a, y);
    const Vector& z = *verdict.certificate;
    const Vector az = a.apply(z);
    double resid = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_GT(z[i], 0.0);
      EXPECT_LT(az[i], z[i]);
      resid = std::max(resid, std::abs(z[i] - az[i] - y[i]));
    }
    EXPECT_LE(resid, 1e-9 * max_abs(y));
  }
}

TEST(ClassifyNormalityTest, RefutationCarriesPerronEvidence) {
  const auto v = classify_normality(NonnegativeMatrix({{0.6, 0.6}, {0.6, 0.6}}));
  EXPECT_FALSE(v.normal);
  ASSERT_TRUE(v.refutation);
  EXPECT_NEAR(v.refutation->lambda, 1.2, 1e-9);
  EXPECT_LT(v.refutation->residual, 1e-8);
  for (double x : v.refutation->vector) EXPECT_GE(x, 0.0);
}

TEST(ClassifyNormalityTest, NearSingularPivotIsUndecided) {
  // I - A has a pivot of exactly 1e-13.
  const NonnegativeMatrix a({{1.0 - 1e-13}});
  try {
    classify_normality(a);
    FAIL() << "expected Undecided";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndecided);
  }
}

TEST(ClassifyNormalityTest, ZeroPivotWithCertifiedRadiusIsRefuted) {
  // I - I vanishes, and the spectral lower bound is exactly 1.
  const auto v = classify_normality(NonnegativeMatrix::identity(3));
  EXPECT_FALSE(v.normal);
  ASSERT_TRUE(v.refutation.has_value());
  EXPECT_NEAR(v.refutation->lambda, 1.0, 1e-12);
}

TEST(NuEstimateTest, Examples) {
  EXPECT_EQ(nu_estimate(NonnegativeMatrix::zero(3), 1e-10), 0.0);
  EXPECT_NEAR(nu_estimate(kSym, 1e-10), 0.75, 1e-10);
  EXPECT_NEAR(nu_estimate(coupled_matrix(0.8), 1e-10), 0.8, 1e-10);
  EXPECT_THROW(nu_estimate(kSym, 0.0), Error);
}

TEST(SpectralRadiusTest, Examples) {
  const auto z = spectral_radius(NonnegativeMatrix::zero(2), 1e-10);
  EXPECT_EQ(z.rho, 0.0);
  EXPECT_TRUE(z.converged);

  const auto s = spectral_radius(kSym, 1e-10);
  EXPECT_NEAR(s.rho, 0.75, 1e-10);
  EXPECT_LE(s.lower, 0.75 + 1e-15);
  EXPECT_GE(s.upper, 0.75 - 1e-15);

  const auto t = spectral_radius(tripled_matrix({0.2, 0.2, 0.2}), 1e-10);
  EXPECT_NEAR(t.rho, 0.6, 1e-10);

  EXPECT_THROW(spectral_radius(kSym, -1.0), Error);
}

TEST(SpectralRadiusTest, BracketContainsEigenOracle) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const NonnegativeMatrix a(testing::random_nonnegative(rng, n, 0.4));
    const double rho = eigen_spectral_radius(a.matrix());
    const auto s = spectral_radius(a, 1e-9);
    const double slack = 1e-12 * std::max(1.0, rho);
    EXPECT_LE(s.lower, rho + slack) << "trial " << trial;
    EXPECT_GE(s.upper, rho - slack) << "trial " << trial;
  }
}

TEST(SpectralRadiusTest, ReducibleAndNilpotentCases) {
  const auto d = spectral_radius(NonnegativeMatrix({{0.5, 0.0}, {0.0, 0.3}}), 1e-10);
  EXPECT_TRUE(d.converged);
  EXPECT_NEAR(d.rho, 0.5, 1e-10);

  const auto nil = spectral_radius(NonnegativeMatrix({{0.0, 2.0}, {0.0, 0.0}}), 1e-10);
  EXPECT_TRUE(nil.converged);
  EXPECT_EQ(nil.upper, 0.0);

  const auto perm = spectral_radius(NonnegativeMatrix({{0.0, 1.0}, {1.0, 0.0}}), 1e-10);
  EXPECT_NEAR(perm.rho, 1.0, 1e-10);
}

TEST(IsAsymptoticTest, Examples) {
  EXPECT_TRUE(is_asymptotic(NonnegativeMatrix::zero(2), 1e-10, 1));
  EXPECT_TRUE(is_asymptotic(NonnegativeMatrix({{0.0, 2.0}, {0.0, 0.0}}), 1e-10, 10));
  EXPECT_FALSE(is_asymptotic(NonnegativeMatrix::identity(3), 1e-10, 100));
}

TEST(IsAsymptoticTest, UndecidedWhenPowersExhausted) {
  // rho = 0.999, but the off-diagonal coupling keeps ||A^p||_1 above 1 for
  // the first five powers.
  const NonnegativeMatrix a({{0.999, 10.0}, {0.0, 0.999}});
  try {
    is_asymptotic(a, 1e-10, 5);
    FAIL() << "expected Undecided";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndecided);
  }
}

TEST(NeumannInverseTest, Examples) {
  const auto s1 = neumann_inverse(NonnegativeMatrix({{0.5}}), 1e-14);
  EXPECT_NEAR(s1(0, 0), 2.0, 1e-13);

  const auto s2 = neumann_inverse(kSym, 1e-14);
  EXPECT_NEAR(s2(0, 0), 0.5 / 0.1875, 1e-12);
  EXPECT_NEAR(s2(0, 1), 0.25 / 0.1875, 1e-12);
  EXPECT_NEAR(s2(1, 0), 0.25 / 0.1875, 1e-12);
  EXPECT_NEAR(s2(1, 1), 0.5 / 0.1875, 1e-12);

  EXPECT_EQ(neumann_inverse(NonnegativeMatrix::zero(3), 1e-12).matrix(), Matrix::identity(3));
  EXPECT_THROW(neumann_inverse(NonnegativeMatrix::identity(2), 1e-12), Error);
}

TEST(NeumannInverseTest, ResidualWithinTolerance) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    Matrix m;
    if (!testing::random_with_radius(rng, n, 0.9, m)) continue;
    const NonnegativeMatrix a(m);
    const double tol = 1e-10;
    const auto s = neumann_inverse(a, tol);
    const Matrix resid = testing::i_minus(a.matrix()) * s.matrix() - Matrix::identity(n);
    EXPECT_LE(induced_norm_1(resid), tol * (1.0 + 1e-6));
  }
}

// Four characterizations agree away from rho = 1.
TEST(EquivalenceTest, FourWayOnRandomMatrices) {
  std::mt19937_64 rng(31);
  const double factors[] = {0.5, 0.9, 1.1, 2.0};
  int checked = 0;
  for (int trial = 0; trial < 240; ++trial) {
    const std::size_t n = 1 + trial % 6;
    Matrix m;
    if (!testing::random_with_radius(rng, n, factors[trial % 4], m)) continue;
    const NonnegativeMatrix a(m);
    const double rho = eigen_spectral_radius(m);
    if (std::abs(rho - 1.0) < 1e-6) continue;
    const bool matkowski = is_normal_matkowski(a);
    EXPECT_EQ(matkowski, is_admissible(a));
    EXPECT_EQ(matkowski, spectral_radius(a, 1e-10).upper < 1.0);
    EXPECT_EQ(matkowski, is_asymptotic(a, 1e-10, 100000));
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(NuEstimateTest, AgreesWithSpectralRadius) {
  std::mt19937_64 rng(37);
  const double t = 1e-9;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const NonnegativeMatrix a(testing::random_nonnegative(rng, n, 0.0));
    EXPECT_LE(std::abs(nu_estimate(a, t) - spectral_radius(a, t).rho), 2 * t);
  }
}

TEST(NuEstimateTest, MonotoneInEntries) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 0.3);
  const double tol = 1e-9;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 5;
    Matrix lo = testing::random_nonnegative(rng, n);
    Matrix hi = lo;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) hi(i, j) += u(rng);
    EXPECT_LE(nu_estimate(NonnegativeMatrix(lo), tol),
              nu_estimate(NonnegativeMatrix(hi), tol) + 2 * tol);
  }
}

}  // namespace
}  // namespace fixpoint
