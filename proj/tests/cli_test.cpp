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

#include "ifm/cli.hpp"

#include <filesystem>
#include <map>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"

using namespace ifm;
using namespace ifm::cli;

namespace {

const std::filesystem::path kSourceDir = IFM_SOURCE_DIR;

struct Captured {
    int code = -1;
    std::string out, err;
};

Captured run(const RunConfig& cfg) {
    std::ostringstream out, err;
    Captured c;
    c.code = cmd_run(cfg, out, err);
    c.out = out.str();
    c.err = err.str();
    return c;
}

RunConfig builtin(std::string name, std::optional<std::size_t> n = {}, std::optional<std::size_t> m = {}) {
    RunConfig cfg;
    cfg.builtin = std::move(name);
    cfg.n = n;
    cfg.m = m;
    return cfg;
}

bool contains(const std::string& haystack, const std::string& needle) { return haystack.find(needle) != std::string::npos; }

/// Splits a CSV line; fields in this output never contain quotes.
std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            out.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// run

TEST(Run, HardyTableHasExactDarkPortEntry) {
    const Captured c = run(builtin("hardy"));
    EXPECT_EQ(c.code, kExitOk) << c.err;
    EXPECT_TRUE(contains(c.out, "P(d AND X-) = 1/16 (0.062500)")) << c.out;
    EXPECT_TRUE(contains(c.out, "P(c AND X+) = 9/16 (0.562500)")) << c.out;
}

TEST(Run, ProgramJsonSumsToOne) {
    RunConfig cfg;
    cfg.file = (kSourceDir / "programs" / "fig2.ifm").string();
    cfg.format = Format::Json;
    const Captured c = run(cfg);
    ASSERT_EQ(c.code, kExitOk) << c.err;
    const auto j = nlohmann::json::parse(c.out);
    for (const char* key : {"scenario", "backend", "joint", "conditionals"}) EXPECT_TRUE(j.contains(key)) << key;
    QuadRational total(0);
    for (const auto& e : j["joint"]) {
        for (const char* key : {"photon", "spins", "p_exact", "p_decimal"}) EXPECT_TRUE(e.contains(key)) << key;
        total = total + QuadRational::parse(e["p_exact"].get<std::string>());
    }
    EXPECT_EQ(total, QuadRational(1));
}

TEST(Run, SelectReportsHeadlineConditionals) {
    const Captured c = run(builtin("select", 3, 2));
    ASSERT_EQ(c.code, kExitOk) << c.err;
    EXPECT_TRUE(contains(c.out, "P(Z2+ | d) = 4/7 (0.571429)")) << c.out;
    EXPECT_TRUE(contains(c.out, "P(X1+ AND X3+ | Z2+, d) = 1 (1.000000)")) << c.out;
    EXPECT_TRUE(contains(c.out, "56% differs from 57.14%")) << c.out;
}

TEST(Run, CompactRowNames) {
    const Captured a = run(builtin("row-3-blocked"));
    const Captured b = run(builtin("row-blocked", 3));
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out.substr(a.out.find('\n')), b.out.substr(b.out.find('\n')));
}

TEST(Run, JsonAndCsvCarryTheSameValues) {
    RunConfig cfg = builtin("select", 3, 2);
    cfg.format = Format::Json;
    const auto j = nlohmann::json::parse(run(cfg).out);
    cfg.format = Format::Csv;
    std::istringstream csv(run(cfg).out);
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "photon,spins,p_exact,p_decimal");
    std::map<std::pair<std::string, std::string>, std::pair<std::string, double>> rows;
    while (std::getline(csv, line)) {
        const auto f = csv_split(line);
        ASSERT_EQ(f.size(), 4u) << line;
        rows[{f[0], f[1]}] = {f[2], std::stod(f[3])};
    }
    std::size_t matched = 0;
    for (const auto& e : j["joint"]) {
        const auto& row = rows.at({e["photon"], e["spins"]});
        EXPECT_EQ(row.first, e["p_exact"].get<std::string>());
        EXPECT_NEAR(row.second, e["p_decimal"].get<double>(), 1e-12);
        ++matched;
    }
    for (const auto& [name, p] : j["conditionals"].items()) {
        const auto& row = rows.at({"conditional", name});
        EXPECT_EQ(row.first, p["p_exact"].get<std::string>());
        EXPECT_NEAR(row.second, p["p_decimal"].get<double>(), 1e-12);
        ++matched;
    }
    EXPECT_EQ(matched, rows.size());
}

TEST(Run, FloatBackendJsonHasNullExact) {
    RunConfig cfg = builtin("hardy");
    cfg.backend = Backend::Float;
    cfg.format = Format::Json;
    const auto j = nlohmann::json::parse(run(cfg).out);
    EXPECT_EQ(j["backend"], "float");
    for (const auto& e : j["joint"]) EXPECT_TRUE(e["p_exact"].is_null());
}

TEST(Run, OutputIsDeterministic) {
    for (Format f : {Format::Table, Format::Json, Format::Csv}) {
        RunConfig cfg = builtin("row", 4);
        cfg.format = f;
        EXPECT_EQ(run(cfg).out, run(cfg).out);
    }
    RunConfig sampled = builtin("hardy");
    sampled.backend = Backend::Float;
    sampled.samples = 2000;
    sampled.seed = 11;
    const Captured a = run(sampled);
    EXPECT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, run(sampled).out);
    EXPECT_TRUE(contains(a.out, "samples: 2000 (seed 11)"));
}

TEST(Run, SamplingTracksExactValues) {
    const ScenarioResult r = run_hardy(false, {Backend::Float});
    const SampleCounts s = sample_outcomes(r, 200000, 3);
    std::size_t total = 0;
    for (std::size_t k = 0; k < r.joint.size(); ++k) {
        total += s.counts[k];
        EXPECT_NEAR(static_cast<double>(s.counts[k]) / 200000.0, r.joint[k].p.value, 0.01);
    }
    EXPECT_EQ(total, 200000u);
}

TEST(Run, DumpStatesAddsStages) {
    RunConfig cfg = builtin("hardy");
    cfg.dump_states = true;
    const Captured c = run(cfg);
    EXPECT_TRUE(contains(c.out, "stage prepare:")) << c.out;
    EXPECT_TRUE(contains(c.out, "photon=src spins=- amp=1/sqrt2")) << c.out;
}

// ---------------------------------------------------------------------------
// exit codes

TEST(ExitCodes, ConfigurationErrors) {
    EXPECT_EQ(run(builtin("row")).code, kExitDiagnostics);
    EXPECT_EQ(run(builtin("row", 25)).code, kExitDiagnostics);
    EXPECT_EQ(run(builtin("select", 3)).code, kExitDiagnostics);
    EXPECT_EQ(run(builtin("select", 3, 4)).code, kExitDiagnostics);
    EXPECT_EQ(run(builtin("hardy", 2)).code, kExitDiagnostics);
    EXPECT_EQ(run(builtin("nonsense")).code, kExitDiagnostics);
    EXPECT_EQ(run(builtin("row-x")).code, kExitDiagnostics);
    EXPECT_EQ(run(RunConfig{}).code, kExitDiagnostics);
    RunConfig sampled = builtin("hardy");
    sampled.samples = 10;  // exact backend
    const Captured c = run(sampled);
    EXPECT_EQ(c.code, kExitDiagnostics);
    EXPECT_TRUE(contains(c.err, "--samples requires --backend float"));
}

TEST(ExitCodes, MissingFileAndDiagnostics) {
    RunConfig missing;
    missing.file = (kSourceDir / "programs" / "no_such.ifm").string();
    EXPECT_EQ(run(missing).code, kExitDiagnostics);

    RunConfig bad;
    bad.file = (kSourceDir / "tests" / "fixtures" / "undefined_mode.ifm").string();
    const Captured c = run(bad);
    EXPECT_EQ(c.code, kExitDiagnostics);
    EXPECT_TRUE(contains(c.err, "undefined_mode.ifm:4:7: error: undefined mode w")) << c.err;
    EXPECT_TRUE(c.out.empty());
}

TEST(ExitCodes, FaultyEngineIsAnInternalError) {
    RunConfig cfg = builtin("row", 3);
    cfg.inject_fault = true;
    const Captured c = run(cfg);
    EXPECT_EQ(c.code, kExitInternal);
    EXPECT_TRUE(contains(c.out, "[FAILED]")) << c.out;
}

// ---------------------------------------------------------------------------
// sweep and oracle-check

TEST(Sweep, ThreeRowsWithClosedFormColumn) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_sweep(3, Format::Table, out, err), kExitOk);
    EXPECT_TRUE(contains(out.str(), "4/7")) << out.str();
    EXPECT_TRUE(contains(out.str(), "5/8")) << out.str();
    EXPECT_TRUE(contains(out.str(), "differs from the engine at n = 2 3")) << out.str();
}

TEST(Sweep, TwelveRowsApproachOneHalf) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_sweep(12, Format::Json, out, err), kExitOk);
    const auto j = nlohmann::json::parse(out.str());
    ASSERT_EQ(j["rows"].size(), 12u);
    for (const auto& row : j["rows"]) EXPECT_TRUE(row["engine_equals_oracle"].get<bool>());
    EXPECT_NEAR(j["rows"][11]["engine"]["p_decimal"].get<double>(), 0.5, 0.01);
}

TEST(Sweep, RangeIsEnforced) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_sweep(0, Format::Table, out, err), kExitDiagnostics);
    EXPECT_EQ(cmd_sweep(21, Format::Table, out, err), kExitDiagnostics);
}

TEST(OracleCheck, AgreesAndDetectsFaults) {
    for (std::size_t n : {1u, 3u}) {
        std::ostringstream out, err;
        EXPECT_EQ(cmd_oracle_check(n, false, out, err), kExitOk) << out.str();
    }
    std::ostringstream out, err;
    EXPECT_EQ(cmd_oracle_check(3, true, out, err), kExitDiagnostics);
    EXPECT_TRUE(contains(out.str(), "FAIL row n=3: first difference at photon=")) << out.str();
}
