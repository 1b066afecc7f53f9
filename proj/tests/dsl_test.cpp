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

#include "ifm/dsl.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

using namespace ifm;
using namespace ifm::dsl;

namespace {

const std::filesystem::path kSourceDir = IFM_SOURCE_DIR;

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentAst parse_ok(std::string_view src) {
    ParseResult r = parse(src);
    if (!r.ast) {
        std::string all;
        for (const auto& d : r.diagnostics) all += d.format("<src>") + "\n";
        throw std::runtime_error(all);
    }
    return *r.ast;
}

Program compile_ok(const ExperimentAst& ast) {
    CompileResult r = check_and_compile(ast);
    if (!r.program) {
        std::string all;
        for (const auto& d : r.diagnostics) all += d.format("<src>") + "\n";
        throw std::runtime_error(all);
    }
    return *r.program;
}

ScenarioResult run_file(const std::string& name, const RunOptions& opts = {}) {
    return run_program(compile_ok(parse_ok(slurp(kSourceDir / "programs" / name))), opts, name);
}

/// Diagnostics from parsing and, when parsing succeeds, compiling.
std::vector<Diagnostic> diagnose(std::string_view src) {
    ParseResult p = parse(src);
    if (!p.ast) return p.diagnostics;
    return check_and_compile(*p.ast).diagnostics;
}

}  // namespace

// ---------------------------------------------------------------------------
// parser

TEST(Parse, SingleAtomProgram) {
    const ExperimentAst ast = parse_ok("atoms 1\nsplit src -> u v\ncross v 1\nmerge u v -> c d\npostselect d\nmeasure 1 x");
    ASSERT_EQ(ast.statements.size(), 6u);
    EXPECT_EQ(std::get<AtomsDecl>(ast.statements[0].kind).n, 1u);
    EXPECT_EQ(std::get<Split>(ast.statements[1].kind), (Split{"src", "u", "v"}));
    EXPECT_EQ(std::get<Cross>(ast.statements[2].kind), (Cross{"v", 1}));
    EXPECT_EQ(std::get<Merge>(ast.statements[3].kind), (Merge{"u", "v", "c", "d"}));
    EXPECT_EQ(std::get<Postselect>(ast.statements[4].kind).mode, "d");
    EXPECT_EQ(std::get<MeasureSpin>(ast.statements[5].kind), (MeasureSpin{1, SpinBasis::X, std::nullopt}));
    EXPECT_EQ(ast.statements[3].where.line, 4);
    EXPECT_EQ(ast.statements[3].where.column, 1);
}

TEST(Parse, BlockBeforeMerge) {
    const ExperimentAst ast =
        parse_ok("atoms 3\nsplit src -> u v\ncross v 1\ncross v 2\ncross v 3\nblock v\nmerge u v -> c d\n");
    ASSERT_EQ(ast.statements.size(), 7u);
    EXPECT_TRUE(std::holds_alternative<Block>(ast.statements[5].kind));
    EXPECT_TRUE(std::holds_alternative<Merge>(ast.statements[6].kind));
}

TEST(Parse, IntegerExpected) {
    const ParseResult r = parse("atoms x");
    EXPECT_FALSE(r.ast.has_value());
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_EQ(r.diagnostics[0].where.line, 1);
    EXPECT_EQ(r.diagnostics[0].where.column, 7);
    EXPECT_EQ(r.diagnostics[0].message, "integer expected");
    EXPECT_EQ(r.diagnostics[0].format("bad.ifm"), "bad.ifm:1:7: error: integer expected");
}

TEST(Parse, CommentsWhitespaceAndKeep) {
    const ExperimentAst ast = parse_ok("  # header\n\natoms   2   # two\n\tmeasure 2 z keep -\n");
    ASSERT_EQ(ast.statements.size(), 2u);
    EXPECT_EQ(std::get<MeasureSpin>(ast.statements[1].kind), (MeasureSpin{2, SpinBasis::Z, Spin::Minus}));
    EXPECT_EQ(ast.statements[1].where.line, 4);
    EXPECT_EQ(ast.statements[1].where.column, 2);
}

TEST(Parse, NeverReturnsPartialAst) {
    const ParseResult r = parse("atoms 1\nsplit src -> u v\nfrobnicate\ncross v one\n");
    EXPECT_FALSE(r.ast.has_value());
    ASSERT_EQ(r.diagnostics.size(), 2u);
    EXPECT_EQ(r.diagnostics[0].where.line, 3);
    EXPECT_EQ(r.diagnostics[1].where.line, 4);
}

TEST(Parse, KeywordsAreLowercase) {
    const ParseResult r = parse("Atoms 1\n");
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_NE(r.diagnostics[0].message.find("unknown keyword 'Atoms'"), std::string::npos);
}

TEST(Parse, AstEqualityIgnoresLocations) {
    EXPECT_EQ(parse_ok("atoms 1\n  cross v 1"), parse_ok("atoms 1\ncross   v 1\n"));
    EXPECT_NE(parse_ok("atoms 1\ncross v 1"), parse_ok("atoms 1\ncross u 1"));
}

TEST(Render, RoundTripGoldenPrograms) {
    for (const auto& entry : std::filesystem::directory_iterator(kSourceDir / "programs")) {
        if (entry.path().extension() != ".ifm") continue;
        const ExperimentAst ast = parse_ok(slurp(entry.path()));
        const std::string text = render(ast);
        EXPECT_EQ(parse_ok(text), ast) << entry.path();
        EXPECT_EQ(render(parse_ok(text)), text) << entry.path();
    }
}

// ---------------------------------------------------------------------------
// checker

TEST(Check, UndefinedMode) {
    const auto d = diagnose("atoms 1\nsplit src -> u v\ncross w 1\n");
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].message, "undefined mode w");
    EXPECT_EQ(d[0].where.line, 3);
}

TEST(Check, DoubleBlock) {
    const auto d = diagnose("atoms 1\nsplit src -> u v\nblock v\nblock v\n");
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].message, "Blocked channel already used");
}

TEST(Check, CompilesToBuilderCallSequence) {
    const Program p = compile_ok(parse_ok(slurp(kSourceDir / "programs" / "fig1.ifm")));
    ASSERT_EQ(p.ops.size(), 5u);
    EXPECT_EQ(std::get<op::Prepare>(p.ops[0]).n, 1u);
    const BeamSplitter& bs1 = std::get<op::Splitter>(p.ops[1]).bs;
    EXPECT_EQ(bs1.in1, Mode::Source);
    EXPECT_EQ(bs1.out1, Mode::V);
    EXPECT_EQ(bs1.out2, Mode::U);
    EXPECT_EQ(std::get<op::Interact>(p.ops[2]).atom, 1u);
    EXPECT_EQ(std::get<op::Interact>(p.ops[2]).arm, Mode::V);
    const BeamSplitter& bs2 = std::get<op::Splitter>(p.ops[3]).bs;
    EXPECT_EQ(bs2.in1, Mode::U);
    EXPECT_EQ(bs2.in2, Mode::V);
    EXPECT_EQ(bs2.out1, Mode::C);
    EXPECT_EQ(bs2.out2, Mode::D);
    EXPECT_EQ(std::get<op::Reverse>(p.ops[4]).atom, 1u);
    EXPECT_EQ(p.bases, std::vector<SpinBasis>{SpinBasis::X});
}

TEST(Check, EveryFixtureFiresItsDiagnostic) {
    int fixtures = 0;
    for (const auto& entry : std::filesystem::directory_iterator(kSourceDir / "tests" / "fixtures")) {
        if (entry.path().extension() != ".ifm") continue;
        ++fixtures;
        const std::string src = slurp(entry.path());
        // First line: "# expect: <line>:<col>: <message fragment>"
        const std::string header = src.substr(0, src.find('\n'));
        ASSERT_EQ(header.rfind("# expect: ", 0), 0u) << entry.path();
        int line = 0, col = 0;
        ASSERT_EQ(std::sscanf(header.c_str(), "# expect: %d:%d:", &line, &col), 2) << entry.path();
        const std::string fragment = header.substr(header.find(": ", 10) + 2);
        const auto diags = diagnose(src);
        ASSERT_FALSE(diags.empty()) << entry.path();
        EXPECT_EQ(diags[0].where.line, line) << entry.path();
        EXPECT_EQ(diags[0].where.column, col) << entry.path();
        EXPECT_NE(diags[0].message.find(fragment), std::string::npos) << entry.path() << ": " << diags[0].message;
    }
    EXPECT_GE(fixtures, 12);
}

// ---------------------------------------------------------------------------
// execution

TEST(Execute, GoldenProgramsMatchBuilders) {
    const std::vector<std::pair<std::string, ScenarioResult>> cases = {
        {"fig1.ifm", run_hardy(false)},
        {"fig1_blocked.ifm", run_hardy(true)},
        {"fig2.ifm", run_n_atom_row(3, false)},
        {"fig2_blocked.ifm", run_n_atom_row(3, true)},
    };
    for (const auto& [file, builder] : cases) {
        const ScenarioResult program = run_file(file);
        EXPECT_FALSE(program.joint.empty());
        EXPECT_EQ(first_joint_difference(program.joint, builder.joint), std::nullopt) << file;
        for (const auto& e : program.joint) EXPECT_TRUE(e.p.exact.has_value());
    }
}

TEST(Execute, SelectProgramReproducesProtocol) {
    const ScenarioResult r = run_file("fig2_select.ifm");
    ASSERT_EQ(r.joint.size(), 1u);
    EXPECT_EQ(r.joint[0].photon, "d");
    EXPECT_EQ(r.joint[0].spins, "X1+ Z2+ X3+");
    EXPECT_EQ(*r.joint[0].p.exact, QuadRational(1));
    ASSERT_NE(r.conditional("P(d)"), nullptr);
    EXPECT_EQ(*r.conditional("P(d)")->exact, QuadRational::fraction(7, 32));
    ASSERT_NE(r.conditional("P(Z2+ | d)"), nullptr);
    EXPECT_EQ(*r.conditional("P(Z2+ | d)")->exact, QuadRational::fraction(4, 7));
}

TEST(Execute, FloatBackendAndCustomNames) {
    const Program p = compile_ok(parse_ok("atoms 1\nsplit src -> left right\ncross right 1\nmerge left right -> bright dark\n"));
    const ScenarioResult r = run_program(p, {Backend::Float});
    ASSERT_NE(r.joint_entry("dark", "Z+"), nullptr);
    EXPECT_NEAR(r.joint_entry("dark", "Z+")->value, 0.125, 1e-12);
    EXPECT_NE(r.joint_entry("absorbed(1)", "Z+"), nullptr);
}

TEST(Execute, EmptySelectionIsReported) {
    const Program p = compile_ok(parse_ok("atoms 1\nsplit src -> u v\nblock v\nmerge u v -> c d\nmeasure 1 x keep -\n"));
    EXPECT_THROW(run_program(p), EmptyOutcomeError);
}
