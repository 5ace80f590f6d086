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


#include "nonloc/io.h"

#include <gtest/gtest.h>

#include <sstream>

#include "nonloc/error.h"
#include "test_util.h"

using namespace nonloc;
using namespace nonloc::testing;

TEST(Io, ComplexFlag) {
    EXPECT_EQ(io::parse_complex_flag("0,2"), cplx(0, 2));
    EXPECT_EQ(io::parse_complex_flag("-1.5"), cplx(-1.5, 0));
    EXPECT_EQ(io::parse_complex_flag(" 1e-1 , -3 "), cplx(0.1, -3));
    EXPECT_THROW(io::parse_complex_flag("1;2"), ParseError);
    EXPECT_THROW(io::parse_complex_flag("x"), ParseError);
    EXPECT_THROW(io::parse_complex_flag("1,2,3"), ParseError);
}

TEST(Io, StateRoundTrip) {
    PureState psi = haar_random_pure(3, 8);
    PureState back = io::state_from_json(io::json::parse(io::state_to_json(psi).dump()));
    for (std::size_t i = 0; i < psi.dim(); i++) {
        EXPECT_EQ(psi[i], back[i]);
    }
}

TEST(Io, SymmetricStateFileExpands) {
    PureState g = io::state_from_json(io::read_json_file(fixture("ghz3_state.json")));
    EXPECT_NEAR(std::abs(g[0]), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(std::abs(g[7]), 1 / std::sqrt(2.0), 1e-15);
}

TEST(Io, SettingsAndDistributionRoundTrip) {
    auto m = io::settings_from_json(io::read_json_file(fixture("chsh_settings.json")));
    auto again = io::settings_from_json(io::json::parse(io::settings_to_json(m).dump()));
    EXPECT_EQ(again.party(1).b.c1(), m.party(1).b.c1());
    auto d = born_distribution(haar_random_pure(3, 1), m);
    auto back = io::distribution_from_json(io::json::parse(io::distribution_to_json(d).dump()));
    for (std::size_t i = 0; i < d.raw().size(); i++) {
        EXPECT_NEAR(d.raw()[i], back.raw()[i], 1e-16);
    }
}

TEST(Io, Errors) {
    EXPECT_THROW(io::read_json_file(fixture("malformed.json")), ParseError);
    EXPECT_THROW(io::read_json_file(fixture("does_not_exist.json")), ParseError);
    EXPECT_THROW(io::state_from_json(io::json{{"amplitudes", {1, 0}}}), ParseError);
    io::json bad = io::read_json_file(fixture("z3_settings.json"));
    bad["n"] = 2;
    try {
        io::settings_from_json(bad);
        FAIL();
    } catch (const DimensionMismatch &e) {
        EXPECT_NE(std::string(e.what()).find("dimension mismatch"), std::string::npos);
    }
    EXPECT_THROW(io::distribution_from_json(io::json{{"n", 1}, {"p", {{1, 0}}}}), DimensionMismatch);
}

TEST(Io, DistributionCsv) {
    std::ostringstream out;
    io::write_distribution_csv(out, JointDistribution::uniform(1));
    EXPECT_EQ(out.str(), "s,r,p\n0,0,0.5\n0,1,0.5\n1,0,0.5\n1,1,0.5\n");
}

TEST(Io, BitString) {
    EXPECT_EQ(io::bit_string(3, 1), "001");
    EXPECT_EQ(io::bit_string(3, 4), "100");
}
