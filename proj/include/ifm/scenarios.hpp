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
 * Programmatic builders for the interferometer experiments:
 *
 *  - the single-atom experiment, optionally with an obstacle on arm v after
 *    the atom;
 *  - a row of n atoms crossing arm v, optionally followed by an obstacle;
 *  - the select-one-atom protocol on the dark-port branch of the row;
 *  - the "right atom" sweep over n, compared against the path oracle.
 *
 * Every runner reports a normalized joint distribution plus named
 * conditionals; on the exact backend all of them are exact ratios.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ifm/result.hpp"

namespace ifm {

struct RunOptions {
    Backend backend = Backend::Exact;
    /// Record a dump of the state after every stage.
    bool record_stages = false;
    /// Test hook: flip the sign of arm u before the second splitter, which
    /// spoils the interference the oracle checks rely on.
    bool inject_fault = false;
};

/// Declarative description of a builtin experiment.
struct Scenario {
    enum class Kind { Hardy, Row, Select };

    Kind kind = Kind::Hardy;
    std::size_t n_atoms = 1;
    bool obstacle = false;
    std::optional<std::size_t> selected_atom;
    std::string description;

    static Scenario hardy(bool obstacle);
    static Scenario row(std::size_t n, bool obstacle);
    static Scenario select(std::size_t n, std::size_t m);

    /// Throws std::invalid_argument when the fields are inconsistent.
    void validate() const;
};

/// Single atom: prepare, split, interact, optional obstacle, merge, and read
/// the atom out in X.
ScenarioResult run_hardy(bool obstacle, const RunOptions& opts = {});

/// Atoms 1..n cross arm v in index order. The joint is reported in
/// `final_basis` for every atom (Z by default).
ScenarioResult run_n_atom_row(std::size_t n, bool obstacle, SpinBasis final_basis = SpinBasis::Z,
                              const RunOptions& opts = {});

/// Row of n atoms without obstacle; conditions on the dark port, measures atom
/// m in Z and reads the other atoms in X.
ScenarioResult run_select_atom(std::size_t n, std::size_t m, const RunOptions& opts = {});

ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& opts = {});

/// (2^(n-1) + 1) / 2^n, the closed form often quoted for the right-atom
/// probability. Carried as data; it is not what the dynamics produce.
QuadRational closed_form_right_atom(std::size_t n);

/// P(atom m found Z+ | dark port) for the n-atom row, computed by the engine.
Probability engine_right_atom(std::size_t n, std::size_t m = 1, Backend backend = Backend::Exact);

/// P(atom m found Z+ | dark port) for every m = 1..n, from one engine run.
std::vector<Probability> engine_right_atom_each(std::size_t n, Backend backend = Backend::Exact);

struct SweepRow {
    std::size_t n = 0;
    Probability engine;
    Probability oracle;
    QuadRational closed_form;
    bool engine_equals_oracle = false;
};

/// Rows n = 1..n_max (1 <= n_max <= 20); rows are computed concurrently and
/// returned in order of n.
std::vector<SweepRow> sweep_right_atom(std::size_t n_max);

}  // namespace ifm
