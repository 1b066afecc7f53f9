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

#include "ifm/scenarios.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "ifm/oracle.hpp"

using namespace ifm;

namespace {

QuadRational q(Int num, Int den) { return QuadRational::fraction(num, den); }

QuadRational exact_of(const Probability* p) {
    if (p == nullptr) throw std::runtime_error("missing probability");
    if (!p->exact) throw std::runtime_error("probability is not exact");
    return *p->exact;
}

QuadRational cond(const ScenarioResult& r, std::string_view name) {
    const auto* p = r.conditional(name);
    if (p == nullptr) throw std::runtime_error("missing conditional " + std::string(name));
    return exact_of(p);
}

QuadRational joint(const ScenarioResult& r, std::string_view photon, std::string_view spins) {
    const auto* p = r.joint_entry(photon, spins);
    return p == nullptr ? QuadRational(0) : exact_of(p);
}

void expect_checks_pass(const ScenarioResult& r) {
    EXPECT_FALSE(r.checks.empty());
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << r.scenario << ": " << c.name;
}

}  // namespace

// ---------------------------------------------------------------------------
// single atom

TEST(Hardy, JointDistribution) {
    const ScenarioResult r = run_hardy(false);
    EXPECT_EQ(cond(r, "P(absorbed)"), q(1, 4));
    EXPECT_EQ(joint(r, "c", "X+"), q(9, 16));
    EXPECT_EQ(joint(r, "c", "X-"), q(1, 16));
    EXPECT_EQ(joint(r, "d", "X+"), q(1, 16));
    EXPECT_EQ(joint(r, "d", "X-"), q(1, 16));
    EXPECT_EQ(joint_total(r.joint).exact, QuadRational(1));
    expect_checks_pass(r);
}

TEST(Hardy, ObstacleKeepsAtomInXPlus) {
    const ScenarioResult r = run_hardy(true);
    EXPECT_EQ(cond(r, "P(X+ | c or d)"), QuadRational(1));
    EXPECT_EQ(cond(r, "P(c)"), q(1, 4));
    EXPECT_EQ(cond(r, "P(d)"), q(1, 4));
    EXPECT_EQ(cond(r, "P(blocked)"), q(1, 4));
    EXPECT_EQ(cond(r, "P(absorbed)"), q(1, 4));
    EXPECT_EQ(joint(r, "c", "X-"), QuadRational(0));
    EXPECT_EQ(joint(r, "d", "X-"), QuadRational(0));
    expect_checks_pass(r);
    EXPECT_FALSE(r.notes.empty());
}

TEST(Hardy, FloatBackendWithinTolerance) {
    const ScenarioResult exact = run_hardy(false);
    const ScenarioResult floated = run_hardy(false, {Backend::Float});
    EXPECT_EQ(floated.backend, Backend::Float);
    ASSERT_EQ(exact.joint.size(), floated.joint.size());
    for (std::size_t k = 0; k < exact.joint.size(); ++k) {
        EXPECT_EQ(exact.joint[k].photon, floated.joint[k].photon);
        EXPECT_EQ(exact.joint[k].spins, floated.joint[k].spins);
        EXPECT_FALSE(floated.joint[k].p.exact.has_value());
        EXPECT_NEAR(exact.joint[k].p.value, floated.joint[k].p.value, 1e-12);
    }
    expect_checks_pass(floated);
}

TEST(Hardy, StagesRecordedOnRequest) {
    RunOptions opts;
    opts.record_stages = true;
    const ScenarioResult r = run_hardy(false, opts);
    ASSERT_FALSE(r.stages.empty());
    EXPECT_EQ(r.stages.front().first, "prepare");
    EXPECT_TRUE(run_hardy(false).stages.empty());
}

// ---------------------------------------------------------------------------
// row of atoms

TEST(Row, ThreeAtoms) {
    const ScenarioResult r = run_n_atom_row(3, false);
    EXPECT_EQ(cond(r, "P(absorbed)"), q(7, 16));
    EXPECT_EQ(cond(r, "P(d)"), q(7, 32));
    EXPECT_EQ(cond(r, "P(d AND all Z-)"), QuadRational(0));
    int dark_terms = 0;
    for (const auto& e : r.joint) {
        if (e.photon != "d") continue;
        ++dark_terms;
        EXPECT_EQ(*e.p.exact, q(1, 32)) << e.spins;
    }
    EXPECT_EQ(dark_terms, 7);
    EXPECT_EQ(r.joint_entry("d", "Z1- Z2- Z3-"), nullptr);
    expect_checks_pass(r);
}

TEST(Row, OneAtomInXReducesToSingleAtomExperiment) {
    const ScenarioResult row = run_n_atom_row(1, false, SpinBasis::X);
    const ScenarioResult hardy = run_hardy(false);
    EXPECT_EQ(first_joint_difference(row.joint, hardy.joint), std::nullopt);
    const ScenarioResult row_b = run_n_atom_row(1, true, SpinBasis::X);
    EXPECT_EQ(first_joint_difference(row_b.joint, run_hardy(true).joint), std::nullopt);
}

TEST(Row, AllMinusAtDarkPortVanishesForEveryN) {
    for (std::size_t n = 1; n <= 12; ++n) {
        const ScenarioResult r = run_n_atom_row(n, false);
        EXPECT_EQ(cond(r, "P(d AND all Z-)"), QuadRational(0)) << n;
        expect_checks_pass(r);
    }
}

TEST(Row, ObstacleVariantsReadXPlus) {
    for (std::size_t n = 1; n <= 6; ++n) {
        const ScenarioResult r = run_n_atom_row(n, true);
        EXPECT_EQ(cond(r, "P(all X+ | c or d)"), QuadRational(1)) << n;
        expect_checks_pass(r);
    }
}

TEST(Row, RejectsBadSize) {
    EXPECT_THROW(run_n_atom_row(0, false), std::invalid_argument);
    EXPECT_THROW(run_n_atom_row(25, false), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// select-one-atom protocol

TEST(Select, MiddleAtomOfThree) {
    const ScenarioResult r = run_select_atom(3, 2);
    EXPECT_EQ(cond(r, "P(Z2+ | d)"), q(4, 7));
    EXPECT_EQ(cond(r, "P(X1+ | Z2+, d)"), QuadRational(1));
    EXPECT_EQ(cond(r, "P(X3+ | Z2+, d)"), QuadRational(1));
    EXPECT_EQ(cond(r, "P(X1+ AND X3+ | Z2+, d)"), QuadRational(1));
    EXPECT_EQ(cond(r, "P(some other Z+ | Z2-, d)"), QuadRational(1));
    expect_checks_pass(r);
}

TEST(Select, IndexIndependence) {
    for (std::size_t m = 1; m <= 3; ++m) {
        const ScenarioResult r = run_select_atom(3, m);
        const std::string zp = "Z" + std::to_string(m) + "+";
        EXPECT_EQ(cond(r, "P(" + zp + " | d)"), q(4, 7));
        EXPECT_EQ(cond(r, "P(" + zp + " | d)"), oracle::right_atom(3, m));
        EXPECT_EQ(cond(r, "P(some other Z+ | Z" + std::to_string(m) + "-, d)"), QuadRational(1));
        expect_checks_pass(r);
    }
}

TEST(Select, DiscrepancyIsReported) {
    const ScenarioResult r = run_select_atom(3, 2);
    bool mentions_reference = false;
    for (const auto& n : r.notes) mentions_reference = mentions_reference || n.find("56%") != std::string::npos;
    EXPECT_TRUE(mentions_reference);
    EXPECT_LT(std::abs(r.conditional("P(Z2+ | d)")->value - 0.56), 0.02);
}

TEST(Select, PermutationSymmetryAndDisentanglement) {
    for (std::size_t n = 2; n <= 6; ++n) {
        std::optional<QuadRational> first;
        for (std::size_t m = 1; m <= n; ++m) {
            const ScenarioResult r = run_select_atom(n, m);
            const QuadRational p = cond(r, "P(Z" + std::to_string(m) + "+ | d)");
            if (!first) first = p;
            EXPECT_EQ(p, *first) << n << " " << m;
            expect_checks_pass(r);
        }
    }
}

TEST(Select, SingleAtomIsAlwaysTheRightOne) {
    const ScenarioResult r = run_select_atom(1, 1);
    EXPECT_EQ(cond(r, "P(Z+ | d)"), QuadRational(1));
}

TEST(Select, RejectsBadIndex) {
    EXPECT_THROW(run_select_atom(3, 0), std::invalid_argument);
    EXPECT_THROW(run_select_atom(3, 4), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// sweep

TEST(Sweep, EngineMatchesOracle) {
    const auto rows = sweep_right_atom(12);
    ASSERT_EQ(rows.size(), 12u);
    for (const auto& row : rows) {
        EXPECT_TRUE(row.engine_equals_oracle) << row.n;
        EXPECT_EQ(*row.engine.exact, *row.oracle.exact) << row.n;
    }
    EXPECT_EQ(*rows[0].engine.exact, QuadRational(1));
    EXPECT_EQ(*rows[2].engine.exact, q(4, 7));
    EXPECT_EQ(rows[2].closed_form, q(5, 8));
    EXPECT_LT(std::abs(rows[11].engine.value - 0.5), 0.01);
}

TEST(Sweep, ClosedFormIsCarriedNotAsserted) {
    EXPECT_EQ(closed_form_right_atom(1), QuadRational(1));
    EXPECT_EQ(closed_form_right_atom(3), q(5, 8));
    EXPECT_NE(*engine_right_atom(3).exact, closed_form_right_atom(3));
}

TEST(Sweep, RowsInOrderAndRangeChecked) {
    const auto rows = sweep_right_atom(4);
    for (std::size_t k = 0; k < rows.size(); ++k) EXPECT_EQ(rows[k].n, k + 1);
    EXPECT_THROW(sweep_right_atom(0), std::invalid_argument);
    EXPECT_THROW(sweep_right_atom(21), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// properties

TEST(Properties, ExactFloatParityOnAllScenarios) {
    std::vector<std::pair<ScenarioResult, ScenarioResult>> pairs;
    pairs.emplace_back(run_hardy(false), run_hardy(false, {Backend::Float}));
    pairs.emplace_back(run_hardy(true), run_hardy(true, {Backend::Float}));
    for (std::size_t n = 1; n <= 5; ++n) {
        pairs.emplace_back(run_n_atom_row(n, false), run_n_atom_row(n, false, SpinBasis::Z, {Backend::Float}));
        pairs.emplace_back(run_n_atom_row(n, true), run_n_atom_row(n, true, SpinBasis::Z, {Backend::Float}));
        pairs.emplace_back(run_select_atom(n, 1), run_select_atom(n, 1, {Backend::Float}));
    }
    for (const auto& [e, f] : pairs) {
        EXPECT_EQ(first_joint_difference(e.joint, f.joint), std::nullopt) << e.scenario;
        ASSERT_EQ(e.conditionals.size(), f.conditionals.size()) << e.scenario;
        for (std::size_t k = 0; k < e.conditionals.size(); ++k) {
            EXPECT_EQ(e.conditionals[k].name, f.conditionals[k].name);
            EXPECT_NEAR(e.conditionals[k].p.value, f.conditionals[k].p.value, 1e-12) << e.conditionals[k].name;
        }
        expect_checks_pass(f);
    }
}

TEST(Properties, FaultInjectionChangesTheDistribution) {
    RunOptions opts;
    opts.inject_fault = true;
    const ScenarioResult broken = run_n_atom_row(3, false, SpinBasis::Z, opts);
    EXPECT_NE(first_joint_difference(broken.joint, run_n_atom_row(3, false).joint), std::nullopt);
}

TEST(ScenarioDescription, Validation) {
    EXPECT_NO_THROW(Scenario::select(3, 2).validate());
    EXPECT_THROW(Scenario::select(3, 4).validate(), std::invalid_argument);
    Scenario s = Scenario::row(3, false);
    s.selected_atom = 1;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    EXPECT_EQ(first_joint_difference(run_scenario(Scenario::hardy(false)).joint, run_hardy(false).joint), std::nullopt);
}
