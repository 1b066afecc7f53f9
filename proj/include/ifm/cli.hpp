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
 * Command implementations behind the `ifmsim` executable. Each command writes
 * its report to `out`, problems to `err`, and returns the process exit code:
 *
 *   0  success
 *   1  diagnostics, configuration errors, or a failed comparison
 *   2  internal invariant violation (engine precondition, arithmetic overflow)
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ifm/result.hpp"
#include "ifm/scenarios.hpp"

namespace ifm::cli {

enum class Format { Table, Json, Csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitDiagnostics = 1;
inline constexpr int kExitInternal = 2;

struct RunConfig {
    /// Path of an `.ifm` program; exclusive with `builtin`.
    std::optional<std::string> file;
    /// hardy | hardy-blocked | row | row-blocked | select, or the compact
    /// forms row-<n>, row-<n>-blocked.
    std::optional<std::string> builtin;
    std::optional<std::size_t> n;
    std::optional<std::size_t> m;
    Backend backend = Backend::Exact;
    Format format = Format::Table;
    /// Monte-Carlo outcome sampling; float backend only.
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    bool dump_states = false;
    bool inject_fault = false;
};

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(std::size_t n_max, Format format, std::ostream& out, std::ostream& err);
int cmd_oracle_check(std::size_t n_max, bool inject_fault, std::ostream& out, std::ostream& err);

// Report rendering, exposed for tests.

/// Empirical counts per joint entry, in joint order.
struct SampleCounts {
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<std::size_t> counts;
};

SampleCounts sample_outcomes(const ScenarioResult& r, std::size_t samples, std::uint64_t seed);

std::string format_report(const ScenarioResult& r, Format format, const std::optional<SampleCounts>& samples = {});
std::string format_sweep(const std::vector<SweepRow>& rows, Format format);

}  // namespace ifm::cli
