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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ifm/dsl.hpp"
#include "ifm/oracle.hpp"
#include "json.hpp"

namespace ifm::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Configuration problem: reported and mapped to exit code 1.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// The 6-place decimal as a JSON number, rounded exactly like the table.
double decimal6(const Probability& p) { return std::stod(p.decimal_string()); }

Json probability_json(const Probability& p) {
    Json j;
    j["p_exact"] = p.exact ? Json(p.exact->to_string()) : Json(nullptr);
    j["p_decimal"] = decimal6(p);
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string joint_label(const JointEntry& e) {
    return e.spins.empty() ? "P(" + e.photon + ")" : "P(" + e.photon + " AND " + e.spins + ")";
}

std::string basis_summary(const ScenarioResult& r) {
    std::string out;
    for (std::size_t j = 0; j < r.bases.size(); ++j) {
        if (!out.empty()) out += ' ';
        out += std::to_string(j + 1) + ":" + (r.bases[j] == SpinBasis::X ? "X" : "Z");
    }
    return out;
}

std::string table_report(const ScenarioResult& r, const std::optional<SampleCounts>& samples) {
    std::ostringstream os;
    os << "scenario: " << r.scenario << "\n";
    os << "backend: " << backend_name(r.backend) << "\n";
    os << "atoms: " << r.n_atoms << " (readout " << basis_summary(r) << ")\n";
    os << "joint distribution:\n";
    for (const auto& e : r.joint) os << "  " << joint_label(e) << " = " << e.p.to_string() << "\n";
    os << "  total = " << joint_total(r.joint).to_string() << "\n";
    if (!r.conditionals.empty()) {
        os << "conditionals:\n";
        for (const auto& c : r.conditionals) os << "  " << c.name << " = " << c.p.to_string() << "\n";
    }
    if (!r.checks.empty()) {
        os << "checks:\n";
        for (const auto& c : r.checks) os << "  [" << (c.passed ? "ok" : "FAILED") << "] " << c.name << "\n";
    }
    if (!r.notes.empty()) {
        os << "notes:\n";
        for (const auto& n : r.notes) os << "  - " << n << "\n";
    }
    if (samples) {
        os << "samples: " << samples->samples << " (seed " << samples->seed << ")\n";
        for (std::size_t k = 0; k < r.joint.size(); ++k) {
            char freq[32];
            std::snprintf(freq, sizeof freq, "%.6f", static_cast<double>(samples->counts[k]) / static_cast<double>(samples->samples));
            os << "  " << joint_label(r.joint[k]) << ": " << samples->counts[k] << " (" << freq << " vs "
               << r.joint[k].p.decimal_string() << ")\n";
        }
    }
    for (const auto& [name, dump] : r.stages) {
        os << "stage " << name << ":\n";
        std::istringstream lines(dump);
        for (std::string line; std::getline(lines, line);) os << "  " << line << "\n";
    }
    return os.str();
}

std::string json_report(const ScenarioResult& r, const std::optional<SampleCounts>& samples) {
    Json j;
    j["scenario"] = r.scenario;
    j["backend"] = std::string(backend_name(r.backend));
    j["n_atoms"] = r.n_atoms;
    Json joint = Json::array();
    for (const auto& e : r.joint) {
        Json entry;
        entry["photon"] = e.photon;
        entry["spins"] = e.spins;
        const Json p = probability_json(e.p);
        entry["p_exact"] = p["p_exact"];
        entry["p_decimal"] = p["p_decimal"];
        joint.push_back(entry);
    }
    j["joint"] = joint;
    Json conditionals = Json::object();
    for (const auto& c : r.conditionals) conditionals[c.name] = probability_json(c.p);
    j["conditionals"] = conditionals;
    Json checks = Json::object();
    for (const auto& c : r.checks) checks[c.name] = c.passed;
    j["checks"] = checks;
    j["notes"] = r.notes;
    if (samples) {
        Json s;
        s["samples"] = samples->samples;
        s["seed"] = samples->seed;
        s["counts"] = samples->counts;
        j["sampling"] = s;
    }
    if (!r.stages.empty()) {
        Json stages = Json::array();
        for (const auto& [name, dump] : r.stages) stages.push_back({{"stage", name}, {"state", dump}});
        j["stages"] = stages;
    }
    return j.dump(2) + "\n";
}

std::string csv_report(const ScenarioResult& r, const std::optional<SampleCounts>& samples) {
    std::ostringstream os;
    os << "photon,spins,p_exact,p_decimal" << (samples ? ",count" : "") << "\n";
    for (std::size_t k = 0; k < r.joint.size(); ++k) {
        const auto& e = r.joint[k];
        os << csv_field(e.photon) << "," << csv_field(e.spins) << "," << (e.p.exact ? e.p.exact->to_string() : "") << ","
           << e.p.decimal_string();
        if (samples) os << "," << samples->counts[k];
        os << "\n";
    }
    // Conditionals follow the joint rows, tagged in the photon column.
    for (const auto& c : r.conditionals) {
        os << "conditional," << csv_field(c.name) << "," << (c.p.exact ? c.p.exact->to_string() : "") << ","
           << c.p.decimal_string() << (samples ? "," : "") << "\n";
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t require(const std::optional<std::size_t>& v, const char* flag, const std::string& builtin) {
    if (!v) throw ConfigError(std::string(flag) + " is required for builtin " + builtin);
    return *v;
}

/// Resolves a builtin name plus --n/--m into a scenario.
Scenario resolve_builtin(const RunConfig& cfg) {
    std::string name = *cfg.builtin;
    std::optional<std::size_t> n = cfg.n;
    bool blocked = false;
    if (name.size() > 8 && name.ends_with("-blocked")) {
        blocked = true;
        name.resize(name.size() - 8);
    }
    // Compact form row-<n>.
    if (name.starts_with("row-")) {
        const std::string digits = name.substr(4);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 3) {
            throw ConfigError("unknown builtin " + *cfg.builtin);
        }
        const std::size_t parsed = std::stoul(digits);
        if (n && *n != parsed) throw ConfigError("--n conflicts with builtin " + *cfg.builtin);
        n = parsed;
        name = "row";
    }
    if (cfg.m && name != "select") throw ConfigError("--m only applies to builtin select");
    if (name == "hardy") {
        if (n && *n != 1) throw ConfigError("builtin hardy has exactly one atom");
        return Scenario::hardy(blocked);
    }
    if (name == "row") {
        const std::size_t count = require(n, "--n", name);
        if (count < 1 || count > kMaxAtoms) throw ConfigError("--n must be in 1..24");
        return Scenario::row(count, blocked);
    }
    if (name == "select" && !blocked) {
        const std::size_t count = require(n, "--n", name);
        const std::size_t m = require(cfg.m, "--m", name);
        if (count < 1 || count > kMaxAtoms) throw ConfigError("--n must be in 1..24");
        if (m < 1 || m > count) throw ConfigError("--m must be in 1..n");
        return Scenario::select(count, m);
    }
    throw ConfigError("unknown builtin " + *cfg.builtin +
                      " (expected hardy, hardy-blocked, row, row-blocked, row-<n>, row-<n>-blocked, select)");
}

/// Runs `body`, mapping exceptions onto the exit-code contract.
template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDiagnostics;
    } catch (const dsl::EmptyOutcomeError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDiagnostics;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitDiagnostics;
    } catch (const EngineError& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const OverflowError& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace

SampleCounts sample_outcomes(const ScenarioResult& r, std::size_t samples, std::uint64_t seed) {
    std::vector<double> weights;
    weights.reserve(r.joint.size());
    for (const auto& e : r.joint) weights.push_back(e.p.value);
    SampleCounts out{samples, seed, std::vector<std::size_t>(r.joint.size(), 0)};
    if (weights.empty()) return out;
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    for (std::size_t k = 0; k < samples; ++k) ++out.counts[pick(rng)];
    return out;
}

std::string format_report(const ScenarioResult& r, Format format, const std::optional<SampleCounts>& samples) {
    switch (format) {
        case Format::Json: return json_report(r, samples);
        case Format::Csv: return csv_report(r, samples);
        case Format::Table: break;
    }
    return table_report(r, samples);
}

std::string format_sweep(const std::vector<SweepRow>& rows, Format format) {
    std::ostringstream os;
    if (format == Format::Json) {
        Json j;
        j["quantity"] = "P(Z1+ | d)";
        Json list = Json::array();
        for (const auto& row : rows) {
            Json r;
            r["n"] = row.n;
            r["engine"] = probability_json(row.engine);
            r["oracle"] = probability_json(row.oracle);
            r["closed_form"] = probability_json(Probability::of(row.closed_form));
            r["engine_equals_oracle"] = row.engine_equals_oracle;
            list.push_back(r);
        }
        j["rows"] = list;
        return j.dump(2) + "\n";
    }
    if (format == Format::Csv) {
        os << "n,engine_exact,engine_decimal,oracle_exact,oracle_decimal,closed_form_exact,closed_form_decimal,"
              "engine_equals_oracle\n";
        for (const auto& row : rows) {
            const Probability closed = Probability::of(row.closed_form);
            os << row.n << "," << row.engine.exact_string() << "," << row.engine.decimal_string() << ","
               << row.oracle.exact_string() << "," << row.oracle.decimal_string() << "," << closed.exact_string() << ","
               << closed.decimal_string() << "," << (row.engine_equals_oracle ? "true" : "false") << "\n";
        }
        return os.str();
    }
    char line[256];
    os << "right-atom probability P(Z1+ | d) for a row of n atoms\n";
    std::snprintf(line, sizeof line, "%3s  %-16s %-10s %-16s %-16s %-10s %s\n", "n", "engine", "decimal", "oracle",
                  "closed form", "decimal", "engine=oracle");
    os << line;
    std::vector<std::size_t> divergent;
    for (const auto& row : rows) {
        const Probability closed = Probability::of(row.closed_form);
        std::snprintf(line, sizeof line, "%3zu  %-16s %-10s %-16s %-16s %-10s %s\n", row.n, row.engine.exact_string().c_str(),
                      row.engine.decimal_string().c_str(), row.oracle.exact_string().c_str(), closed.exact_string().c_str(),
                      closed.decimal_string().c_str(), row.engine_equals_oracle ? "yes" : "NO");
        os << line;
        if (!(row.engine.exact && *row.engine.exact == row.closed_form)) divergent.push_back(row.n);
    }
    if (!rows.empty()) {
        const SweepRow& last = rows.back();
        std::snprintf(line, sizeof line, "at n=%zu the engine value is %.6f, %.3e away from 1/2\n", last.n, last.engine.value,
                      std::abs(last.engine.value - 0.5));
        os << line;
    }
    if (divergent.empty()) {
        os << "closed form (2^(n-1)+1)/2^n agrees with the engine on every row\n";
    } else {
        os << "closed form (2^(n-1)+1)/2^n differs from the engine at n =";
        for (std::size_t n : divergent) os << " " << n;
        os << "\n";
    }
    return os.str();
}

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (cfg.file.has_value() == cfg.builtin.has_value()) {
            throw ConfigError("give either a program file or --builtin");
        }
        if (cfg.samples && cfg.backend != Backend::Float) throw ConfigError("--samples requires --backend float");
        if (cfg.seed && !cfg.samples) throw ConfigError("--seed requires --samples");
        RunOptions opts{cfg.backend, cfg.dump_states, cfg.inject_fault};

        ScenarioResult result;
        if (cfg.builtin) {
            result = run_scenario(resolve_builtin(cfg), opts);
        } else {
            if (cfg.n || cfg.m) throw ConfigError("--n and --m only apply to builtins");
            if (cfg.inject_fault) throw ConfigError("--inject-fault only applies to builtins");
            const std::string source = read_file(*cfg.file);
            const dsl::ParseResult parsed = dsl::parse(source);
            std::vector<dsl::Diagnostic> diags = parsed.diagnostics;
            std::optional<dsl::Program> program;
            if (parsed.ast) {
                dsl::CompileResult compiled = dsl::check_and_compile(*parsed.ast);
                diags = compiled.diagnostics;
                program = std::move(compiled.program);
            }
            if (!program) {
                for (const auto& d : diags) err << d.format(*cfg.file) << "\n";
                return kExitDiagnostics;
            }
            result = dsl::run_program(*program, opts, *cfg.file);
        }

        std::optional<SampleCounts> samples;
        if (cfg.samples) samples = sample_outcomes(result, *cfg.samples, cfg.seed.value_or(std::random_device{}()));
        out << format_report(result, cfg.format, samples);
        if (!result.all_checks_passed()) {
            err << "error: a consistency check failed\n";
            return kExitInternal;
        }
        return kExitOk;
    });
}

int cmd_sweep(std::size_t n_max, Format format, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (n_max < 1 || n_max > oracle::kMaxAtoms) throw ConfigError("--n-max must be in 1..20");
        const auto rows = sweep_right_atom(n_max);
        out << format_sweep(rows, format);
        for (const auto& row : rows) {
            if (!row.engine_equals_oracle) {
                err << "error: engine and oracle differ at n=" << row.n << "\n";
                return kExitDiagnostics;
            }
        }
        return kExitOk;
    });
}

int cmd_oracle_check(std::size_t n_max, bool inject_fault, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (n_max < 1 || n_max > oracle::kMaxAtoms) throw ConfigError("--n-max must be in 1..20");
        RunOptions opts;
        opts.inject_fault = inject_fault;
        int failures = 0;
        const auto report = [&](const std::string& what, const std::optional<std::string>& diff) {
            if (diff) {
                ++failures;
                out << "FAIL " << what << ": first difference at " << *diff << "\n";
            } else {
                out << "ok   " << what << "\n";
            }
        };
        report("hardy", first_joint_difference(run_hardy(false, opts).joint,
                                               oracle::brute_force_oracle(1, false, SpinBasis::X).joint));
        report("hardy-blocked", first_joint_difference(run_hardy(true, opts).joint,
                                                       oracle::brute_force_oracle(1, true, SpinBasis::X).joint));
        for (std::size_t n = 1; n <= n_max; ++n) {
            for (bool blocked : {false, true}) {
                const std::string what = "row n=" + std::to_string(n) + (blocked ? " blocked" : "");
                report(what, first_joint_difference(run_n_atom_row(n, blocked, SpinBasis::Z, opts).joint,
                                                    oracle::brute_force_oracle(n, blocked).joint));
            }
            // The select protocol's headline number for every atom index.
            std::vector<Probability> engine;
            if (inject_fault) {
                const auto r = run_n_atom_row(n, false, SpinBasis::Z, opts);
                for (std::size_t m = 1; m <= n; ++m) {
                    const auto* p = r.conditional("P(" + std::string(n > 1 ? "Z" + std::to_string(m) : "Z") + "+ | d)");
                    engine.push_back(p ? *p : Probability::of(QuadRational(0)));
                }
            } else {
                engine = engine_right_atom_each(n);
            }
            std::optional<std::string> diff;
            for (std::size_t m = 1; m <= n && !diff; ++m) {
                const Probability want = Probability::of(oracle::right_atom(n, m));
                if (!same_probability(engine[m - 1], want)) {
                    diff = "P(Z" + std::to_string(m) + "+ | d): " + engine[m - 1].to_string() + " vs " + want.to_string();
                }
            }
            report("select n=" + std::to_string(n) + " (every m)", diff);
        }
        out << (failures == 0 ? "engine and oracle agree\n" : std::to_string(failures) + " comparison(s) failed\n");
        return failures == 0 ? kExitOk : kExitDiagnostics;
    });
}

}  // namespace ifm::cli
