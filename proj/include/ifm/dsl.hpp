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

/**
 * @file
 * A line-oriented experiment description language (files use `.ifm`):
 *
 *     # comment
 *     atoms 3                  # exactly once, first statement
 *     split src -> u v         # src -> (i u + v)/sqrt2
 *     cross v 1                # atom 1's Z+ box sits across mode v
 *     block v                  # obstacle on mode v
 *     merge u v -> c d         # u -> (c + i d)/sqrt2, v -> (d + i c)/sqrt2
 *     postselect d             # keep runs where the photon is in d
 *     measure 2 z keep +       # read atom 2 in Z, keep only Z2+
 *     measure 1 x              # read atom 1 in X
 *     reverse 3                # apply the reverse field to atom 3
 *
 * parse() produces an ExperimentAst or diagnostics (never both);
 * check_and_compile() checks mode liveness and channel use and lowers the AST
 * to state-engine operations; run_program() executes them.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ifm/result.hpp"
#include "ifm/scenarios.hpp"

namespace ifm::dsl {

// ---------------------------------------------------------------------------
// diagnostics

enum class Severity { Error, Warning };

struct Location {
    int line = 0;
    int column = 0;
};

struct Diagnostic {
    Location where;
    Severity severity = Severity::Error;
    std::string message;

    /// "file:line:col: error: message"
    std::string format(std::string_view file) const;
};

// ---------------------------------------------------------------------------
// syntax

struct AtomsDecl {
    std::size_t n = 0;
    friend bool operator==(const AtomsDecl&, const AtomsDecl&) = default;
};
struct Split {
    std::string in, out1, out2;
    friend bool operator==(const Split&, const Split&) = default;
};
struct Cross {
    std::string mode;
    std::size_t atom = 0;
    friend bool operator==(const Cross&, const Cross&) = default;
};
struct Block {
    std::string mode;
    friend bool operator==(const Block&, const Block&) = default;
};
struct Merge {
    std::string in1, in2, out1, out2;
    friend bool operator==(const Merge&, const Merge&) = default;
};
struct Postselect {
    std::string mode;
    friend bool operator==(const Postselect&, const Postselect&) = default;
};
struct MeasureSpin {
    std::size_t atom = 0;
    SpinBasis basis = SpinBasis::Z;
    std::optional<Spin> keep;
    friend bool operator==(const MeasureSpin&, const MeasureSpin&) = default;
};
struct ReverseField {
    std::size_t atom = 0;
    friend bool operator==(const ReverseField&, const ReverseField&) = default;
};

using StatementKind = std::variant<AtomsDecl, Split, Cross, Block, Merge, Postselect, MeasureSpin, ReverseField>;

struct Statement {
    StatementKind kind;
    /// Location of the keyword.
    Location where;
    /// Location of each argument token after the keyword ("->" included).
    std::vector<Location> args;

    /// Locations are not part of a statement's identity.
    friend bool operator==(const Statement& a, const Statement& b) { return a.kind == b.kind; }
};

struct ExperimentAst {
    std::vector<Statement> statements;
    friend bool operator==(const ExperimentAst&, const ExperimentAst&) = default;
};

struct ParseResult {
    std::optional<ExperimentAst> ast;
    std::vector<Diagnostic> diagnostics;
};

ParseResult parse(std::string_view source);

/// Canonical source text; parse(render(ast)) == ast.
std::string render(const ExperimentAst& ast);

// ---------------------------------------------------------------------------
// lowering

namespace op {
struct Prepare {
    std::size_t n = 0;
};
struct Splitter {
    BeamSplitter bs;
};
struct Interact {
    std::size_t atom = 0;
    Mode arm = Mode::V;
};
struct Obstacle {
    Mode arm = Mode::V;
};
struct KeepMode {
    Mode mode = Mode::D;
    std::string name;
};
struct Reverse {
    std::size_t atom = 0;
};
struct KeepSpin {
    std::size_t atom = 0;
    SpinBasis basis = SpinBasis::Z;
    Spin value = Spin::Plus;
};
}  // namespace op

using Operation = std::variant<op::Prepare, op::Splitter, op::Interact, op::Obstacle, op::KeepMode, op::Reverse, op::KeepSpin>;

struct Program {
    std::size_t n_atoms = 0;
    std::vector<Operation> ops;
    /// Readout basis per atom (X for atoms measured in x or reversed).
    std::vector<SpinBasis> bases;
    /// Source names of the engine modes that were bound.
    std::vector<std::pair<Mode, std::string>> mode_names;

    std::string photon_name(Photon p) const;
};

struct CompileResult {
    std::optional<Program> program;
    std::vector<Diagnostic> diagnostics;
};

CompileResult check_and_compile(const ExperimentAst& ast);

/// Thrown by run_program when post-selection leaves nothing to report.
class EmptyOutcomeError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Executes a compiled program and reports the normalized joint distribution
/// of the final state plus the probability of every selection step.
ScenarioResult run_program(const Program& program, const RunOptions& opts = {}, std::string name = "program");

}  // namespace ifm::dsl
