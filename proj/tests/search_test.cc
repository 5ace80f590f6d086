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


#include "nonloc/search.h"

#include <gtest/gtest.h>

#include "nonloc/error.h"
#include "nonloc/hardy.h"
#include "nonloc/symmetric.h"
#include "test_util.h"

using namespace nonloc;
using namespace nonloc::testing;

TEST(SettingsFromAngles, Layout) {
    std::vector<double> a = {0, 0, kPi, 0, kPi / 2, 0, kPi / 2, kPi / 2};
    auto m = settings_from_angles(2, a);
    EXPECT_NEAR(std::abs(m.party(0).b.normalized()(1)), 1, 1e-15);
    EXPECT_NEAR(std::abs(m.party(1).a.normalized()(0)), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_THROW(settings_from_angles(2, std::vector<double>(7, 0.0)), DimensionMismatch);
}

TEST(HardyAmplitudes, MatchBornTable) {
    PureState psi = haar_random_pure(3, 4);
    std::vector<double> angles = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2};
    auto amps = hardy_amplitudes(psi, angles);
    ASSERT_EQ(amps.size(), 6u);
    auto d = born_distribution(psi, settings_from_angles(3, angles));
    EXPECT_NEAR(std::norm(amps[0]), d.at(0, 0), 1e-14);
    for (int k = 0; k < 3; k++) {
        auto c = single_b_cell(3, k);
        EXPECT_NEAR(std::norm(amps[static_cast<std::size_t>(1 + k)]), d.at(c.s, c.r), 1e-14);
    }
    for (int k = 1; k < 3; k++) {
        auto c = pair_b_cell(3, 0, k);
        EXPECT_NEAR(std::norm(amps[static_cast<std::size_t>(3 + k)]), d.at(c.s, c.r), 1e-14);
    }
}

TEST(FindSettings, Ghz) {
    PureState g = dicke_expand(SymmetricState::ghz(3, kPi / 4));
    SearchConfig cfg;
    cfg.seed = 1;
    auto res = find_settings(g, cfg);
    ASSERT_TRUE(res.found);
    auto r = hardy_conditions(born_distribution(g, *res.settings), 0, {cfg.eps_zero, cfg.delta_pos});
    EXPECT_TRUE(r.passed);
    EXPECT_NEAR(r.p_success, res.p_success, 1e-14);
}

TEST(FindSettings, ProductStateNotFound) {
    SearchConfig cfg;
    cfg.multistarts = 4;
    cfg.max_iters = 500;
    auto res = find_settings(PureState::basis(3, 0), cfg);
    EXPECT_FALSE(res.found);
    EXPECT_FALSE(res.settings.has_value());
    EXPECT_EQ(res.starts, 4);
}

TEST(FindSettings, AgreesWithSymmetricSolver) {
    for (int i = 0; i < 5; i++) {
        auto s = haar_random_symmetric(3, 70 + i);
        bool solver = true;
        try {
            solve_auto(s);
        } catch (const Error &) {
            solver = false;
        }
        SearchConfig cfg;
        cfg.seed = i;
        EXPECT_EQ(find_settings(dicke_expand(s), cfg).found, solver);
    }
}

TEST(FindSettings, RejectsBadConfig) {
    SearchConfig cfg;
    cfg.mu = 0;
    EXPECT_THROW(find_settings(PureState::basis(3, 0), cfg), InvalidArgument);
}

TEST(RandomExperiment, DeterministicAcrossJobs) {
    SearchConfig cfg;
    auto a = random_experiment(3, 12, 5, cfg, 3, 1);
    auto b = random_experiment(3, 12, 5, cfg, 3, 3);
    ASSERT_EQ(a.records.size(), b.records.size());
    EXPECT_EQ(a.passed, 12);
    for (std::size_t i = 0; i < a.records.size(); i++) {
        EXPECT_EQ(a.records[i].sub_seed, b.records[i].sub_seed);
        EXPECT_EQ(a.records[i].p_success, b.records[i].p_success);
        EXPECT_EQ(a.records[i].lp_infeasible, b.records[i].lp_infeasible);
    }
    int checked = 0;
    for (const auto &r : a.records) {
        if (r.lp_checked) {
            checked++;
            EXPECT_TRUE(r.lp_infeasible);
            EXPECT_GT(r.lp_margin, 1e-6);
        }
    }
    EXPECT_EQ(checked, 3);
}

TEST(RandomExperiment, Errors) {
    EXPECT_THROW(random_experiment(2, 5, 1, {}), InvalidArgument);
    EXPECT_THROW(random_experiment(3, 0, 1, {}), InvalidArgument);
}
