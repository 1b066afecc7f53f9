// Copyright 2026 The ifmsim Authors
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

#include "ifm/oracle.hpp"

#include "gtest/gtest.h"
#include "ifm/scenarios.hpp"

using namespace ifm;

namespace {

QuadRational q(Int num, Int den) { return QuadRational::fraction(num, den); }

}  // namespace

TEST(Oracle, OneAtomMatchesSingleAtomExperiment) {
    const ScenarioResult o = oracle::brute_force_oracle(1, false, SpinBasis::X);
    EXPECT_EQ(*o.joint_entry("c", "X+")->exact, q(9, 16));
    EXPECT_EQ(*o.joint_entry("d", "X-")->exact, q(1, 16));
    EXPECT_EQ(first_joint_difference(o.joint, run_hardy(false).joint), std::nullopt);
    EXPECT_EQ(first_joint_difference(oracle::brute_force_oracle(1, true, SpinBasis::X).joint, run_hardy(true).joint),
              std::nullopt);
}

TEST(Oracle, OneAtomDarkPortIsPureZPlus) {
    const ScenarioResult o = oracle::brute_force_oracle(1);
    EXPECT_EQ(*o.conditional("P(Z+ | d)")->exact, QuadRational(1));
}

TEST(Oracle, AllMinusDarkPortCancelsPathByPath) {
    const auto paths = oracle::paths_to(3, false, "d", 0);
    ASSERT_EQ(paths.size(), 2u);
    EXPECT_EQ(paths[0].arm, "u");
    EXPECT_EQ(paths[0].amplitude, (oracle::GaussianAmp{-1, 0, 5}));
    EXPECT_EQ(paths[1].arm, "v");
    EXPECT_EQ(paths[1].amplitude, (oracle::GaussianAmp{1, 0, 5}));
    EXPECT_TRUE(oracle::amplitude_of(3, false, "d", 0).is_zero());
}

TEST(Oracle, AbsorptionHasOnePath) {
    const auto paths = oracle::paths_to(3, false, "absorbed(2)", 0b110);
    ASSERT_EQ(paths.size(), 1u);
    EXPECT_EQ(paths[0].arm, "v");
    EXPECT_TRUE(oracle::paths_to(3, false, "absorbed(1)", 0b110).empty());
}

TEST(Oracle, ThreeAtomConditionals) {
    const ScenarioResult o = oracle::brute_force_oracle(3);
    EXPECT_EQ(*o.conditional("P(absorbed)")->exact, q(7, 16));
    EXPECT_EQ(*o.conditional("P(Z2+ | d)")->exact, q(4, 7));
    EXPECT_EQ(oracle::right_atom(3, 2), q(4, 7));
}

TEST(Oracle, MatchesEngineExactly) {
    for (std::size_t n = 1; n <= 12; ++n) {
        for (bool obstacle : {false, true}) {
            const ScenarioResult o = oracle::brute_force_oracle(n, obstacle);
            const ScenarioResult e = run_n_atom_row(n, obstacle);
            EXPECT_EQ(first_joint_difference(o.joint, e.joint), std::nullopt) << n << " " << obstacle;
            for (const auto& c : o.conditionals) {
                const auto* ec = e.conditional(c.name);
                ASSERT_NE(ec, nullptr) << c.name;
                EXPECT_EQ(*ec->exact, *c.p.exact) << n << " " << c.name;
            }
        }
    }
}

TEST(Oracle, XReadoutMatchesEngine) {
    for (std::size_t n = 1; n <= 4; ++n) {
        for (bool obstacle : {false, true}) {
            EXPECT_EQ(first_joint_difference(oracle::brute_force_oracle(n, obstacle, SpinBasis::X).joint,
                                             run_n_atom_row(n, obstacle, SpinBasis::X).joint),
                      std::nullopt)
                << n;
        }
    }
}

TEST(Oracle, DetectsPerturbedEngine) {
    RunOptions opts;
    opts.inject_fault = true;
    const auto diff = first_joint_difference(oracle::brute_force_oracle(2).joint, run_n_atom_row(2, false, SpinBasis::Z, opts).joint);
    ASSERT_TRUE(diff.has_value());
    EXPECT_NE(diff->find("photon="), std::string::npos);
}

TEST(Oracle, RejectsOversizedRows) {
    EXPECT_THROW(oracle::brute_force_oracle(21), std::invalid_argument);
    EXPECT_THROW(oracle::brute_force_oracle(11, false, SpinBasis::X), std::invalid_argument);
    EXPECT_THROW(oracle::right_atom(3, 4), std::invalid_argument);
}

TEST(Oracle, LargestRowSumsToOne) {
    const ScenarioResult o = oracle::brute_force_oracle(16);
    EXPECT_EQ(*joint_total(o.joint).exact, QuadRational(1));
}
