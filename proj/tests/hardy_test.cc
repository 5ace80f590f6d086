// Copyright 2026 The nonloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "nonloc/hardy.h"

#include <gtest/gtest.h>

#include <random>

#include "nonloc/error.h"
#include "nonloc/search.h"
#include "nonloc/symmetric.h"
#include "test_util.h"

using namespace nonloc;
using namespace nonloc::testing;

namespace {

MeasurementSettings random_settings(int n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> t(0, kPi), phi(0, 2 * kPi);
    std::vector<PartySettings> ps;
    for (int k = 0; k < n; k++) {
        ps.push_back({Ray::from_bloch(t(rng), phi(rng)), Ray::from_bloch(t(rng), phi(rng))});
    }
    return MeasurementSettings(std::move(ps));
}

JointDistribution ghz_hardy_table() {
    auto g = SymmetricState::ghz(3, kPi / 4);
    auto sol = solve_settings(g, cplx(0, 2));
    return born_distribution(dicke_expand(g), sol.settings);
}

}  // namespace

TEST(HardyConditions, GhzFixturePasses) {
    auto r = hardy_conditions(ghz_hardy_table(), 0, {1e-9, 1e-6});
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.zero_residuals.size(), 5u);
    EXPECT_NEAR(r.p_success, 72.0 / 6425, 1e-12);
}

TEST(HardyConditions, ProductStateNeverPasses) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; i++) {
        auto d = born_distribution(PureState::basis(3, 0), random_settings(3, rng));
        EXPECT_FALSE(hardy_conditions(d).passed);
    }
}

TEST(HardyConditions, GhzAtExcludedModulusHasNoSuccess) {
    // Closed-form settings for theta = pi/4, n = 3 at x = 1: y1 = -1, y = 1, x1 = -1.
    auto g = dicke_expand(SymmetricState::ghz(3, kPi / 4));
    std::vector<PartySettings> ps = {{Ray::from_param(-1.0), Ray::from_param(-1.0)},
                                     {Ray::from_param(1.0), Ray::from_param(1.0)},
                                     {Ray::from_param(1.0), Ray::from_param(1.0)}};
    auto r = hardy_conditions(born_distribution(g, MeasurementSettings(ps)));
    EXPECT_NEAR(r.p_success, 0, 1e-15);
    EXPECT_FALSE(r.passed);
}

TEST(HardyConditions, PivotRange) {
    auto d = JointDistribution::uniform(3);
    EXPECT_THROW(hardy_conditions(d, 3), InvalidArgument);
    EXPECT_THROW(hardy_conditions(d, -1), InvalidArgument);
}

TEST(HardyConditions, SymmetricFixtureIsPivotIndependent) {
    // Uniform settings and a permutation-symmetric state: every pivot agrees.
    auto g = dicke_expand(SymmetricState::ghz(3, kPi / 4));
    auto d = born_distribution(g, MeasurementSettings::uniform(3, Ray::from_param(cplx(0, 1)), Ray::from_param(1.0)));
    bool first = hardy_conditions(d, 0).passed;
    for (int p = 1; p < 3; p++) {
        EXPECT_EQ(hardy_conditions(d, p).passed, first);
    }
}

TEST(HardyConditions, StandardVariantAcceptsGhz) {
    // a = |0> - i|1>, b = |0> + |1> on all parties of GHZ(pi/4).
    auto g = dicke_expand(SymmetricState::ghz(3, kPi / 4));
    auto m = MeasurementSettings::uniform(3, Ray::from_param(cplx(0, 1)), Ray::from_param(1.0));
    auto d = born_distribution(g, m);
    auto standard = hardy_conditions(d, 0, {}, HardyVariant::Standard);
    EXPECT_TRUE(standard.passed);
    EXPECT_NEAR(standard.p_success, 1.0 / 8, 1e-12);
    EXPECT_EQ(standard.zero_residuals.size(), 4u);
    // Standard nonlocality only: the pivot pair conditions fail here.
    EXPECT_FALSE(hardy_conditions(d, 0).passed);
}

TEST(Inequalities, AllZeroDeterministicBox) {
    for (int n = 2; n <= 4; n++) {
        std::vector<double> t(dim_of(n) * dim_of(n), 0.0);
        for (std::size_t s = 0; s < dim_of(n); s++) {
            t[s * dim_of(n)] = 1;
        }
        JointDistribution d(n, t);
        EXPECT_NEAR(inequality1(d, 0), 1 - n, 1e-15);
        EXPECT_NEAR(inequality2(d), 1 - n, 1e-15);
    }
}

TEST(Inequalities, GhzFixture) {
    auto d = ghz_hardy_table();
    EXPECT_NEAR(inequality1(d, 0), 72.0 / 6425, 1e-9);
    // Pairs that avoid the pivot contribute, so this one is not positive.
    EXPECT_NEAR(inequality2(d), -0.47069877742730182, 1e-9);
}

TEST(Inequalities, PassImpliesPositiveInequality1) {
    SearchConfig cfg;
    for (int i = 0; i < 5; i++) {
        PureState psi = haar_random_pure(3, 500 + i);
        cfg.seed = i;
        auto res = find_settings(psi, cfg);
        ASSERT_TRUE(res.found);
        auto d = born_distribution(psi, *res.settings);
        ASSERT_TRUE(hardy_conditions(d).passed);
        EXPECT_GT(inequality1(d, 0), 0);
        EXPECT_GE(inequality1(d, 0), res.p_success - 5 * 1e-9);
    }
}

TEST(HardyVectors, SuccessFirstAndNormalized) {
    std::mt19937_64 rng(8);
    auto m = random_settings(3, rng);
    auto v = hardy_vectors(m);
    ASSERT_EQ(v.size(), 6u);
    for (const auto &x : v) {
        EXPECT_NEAR(x.norm(), 1, 1e-12);
    }
    EXPECT_NEAR((v[0] - product_vector(m, 0, 0)).norm(), 0, 1e-12);
}

TEST(ConstructHardyState, TwoQubitsMatchesDirectNullSpace) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 10; i++) {
        auto m = random_settings(2, rng);
        auto sub = construct_hardy_state(m);
        auto v = hardy_vectors(m);
        Eigen::MatrixXcd c(4, 3);
        for (int j = 0; j < 3; j++) {
            c.col(j) = v[static_cast<std::size_t>(j + 1)];
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c.adjoint(), Eigen::ComputeFullV);
        Eigen::VectorXcd null = svd.matrixV().col(3);
        EXPECT_NEAR(std::abs(null.dot(sub.phi.vector())), 1, 1e-10);
        auto r = hardy_conditions(born_distribution(sub.phi, m), 0, {1e-10, 1e-6});
        EXPECT_TRUE(r.passed);
    }
}

TEST(ConstructHardyState, GhzSolverSettings) {
    auto g = SymmetricState::ghz(3, kPi / 4);
    auto sol = solve_settings(g, cplx(0, 2));
    auto sub = construct_hardy_state(sol.settings);
    EXPECT_EQ(sub.basis.cols(), 6);
    auto r = hardy_conditions(born_distribution(sub.phi, sol.settings), 0, {1e-10, 1e-6});
    EXPECT_TRUE(r.passed);
    // GHZ itself is a different state but has the same projection onto the subspace.
    EXPECT_LT(std::abs(sub.phi.vector().dot(dicke_expand(g).vector())), 1 - 1e-6);
    EXPECT_TRUE(mixed_state_check(DensityMatrix::from_pure(dicke_expand(g)), sub, 1e-9));
}

TEST(ConstructHardyState, DegenerateSettings) {
    Ray r = Ray::from_bloch(0.4, 0.2);
    std::vector<PartySettings> ps = {{r, r}, {Ray(1, 0), Ray(1, 1)}, {Ray(1, 0), Ray(1, 1)}};
    EXPECT_THROW(construct_hardy_state(MeasurementSettings(ps)), DegenerateSettings);
}

TEST(ConstructHardyState, ResidualsOverRandomSettings) {
    std::mt19937_64 rng(1234);
    for (int n = 2; n <= 4; n++) {
        for (int i = 0; i < 30; i++) {
            auto m = random_settings(n, rng);
            auto sub = construct_hardy_state(m);
            auto r = hardy_conditions(born_distribution(sub.phi, m), 0, {1e-10, 1e-12});
            for (double z : r.zero_residuals) {
                EXPECT_LT(z, 1e-10);
            }
        }
    }
}

TEST(MixedStateCheck, Examples) {
    std::mt19937_64 rng(55);
    auto m = random_settings(3, rng);
    auto sub = construct_hardy_state(m);
    EXPECT_TRUE(mixed_state_check(DensityMatrix::from_pure(sub.phi), sub, 1e-9));
    EXPECT_FALSE(mixed_state_check(DensityMatrix::maximally_mixed(3), sub, 1e-9));

    // sigma supported on the orthogonal complement of the subspace.
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(sub.basis);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::VectorXcd u = q.col(6), w = q.col(7);
    Eigen::MatrixXcd sigma = 0.5 * (u * u.adjoint() + w * w.adjoint());
    Eigen::VectorXcd phi = sub.phi.vector();
    for (double p : {0.0, 0.3, 0.9, 0.999}) {
        Eigen::MatrixXcd rho = (1 - p) * phi * phi.adjoint() + p * sigma;
        rho = (rho + rho.adjoint()).eval() / 2.0;
        EXPECT_TRUE(mixed_state_check(DensityMatrix(3, rho), sub, 1e-9)) << p;
    }
}
