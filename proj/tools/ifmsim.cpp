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

// ifmsim: run interaction-free-measurement experiments from the command line.
//
//   ifmsim run programs/fig1.ifm
//   ifmsim run --builtin select --n 3 --m 2 --format json
//   ifmsim sweep --n-max 12
//   ifmsim oracle-check --n-max 8

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "ifm/cli.hpp"

int main(int argc, char** argv) {
    using ifm::cli::Format;

    CLI::App app{"Exact simulator for interaction-free measurement experiments"};
    app.require_subcommand(1);

    const std::map<std::string, Format> formats{{"table", Format::Table}, {"json", Format::Json}, {"csv", Format::Csv}};
    const std::map<std::string, ifm::Backend> backends{{"exact", ifm::Backend::Exact}, {"float", ifm::Backend::Float}};

    ifm::cli::RunConfig cfg;
    std::string file;
    std::size_t n = 0, m = 0, samples = 0;
    std::uint64_t seed = 0;
    CLI::App* run = app.add_subcommand("run", "Run a program file or a builtin experiment");
    run->add_option("file", file, "Experiment program (.ifm)");
    run->add_option("--builtin", cfg.builtin,
                    "hardy, hardy-blocked, row, row-blocked, row-<n>, row-<n>-blocked or select");
    auto* n_opt = run->add_option("--n", n, "Number of atoms");
    auto* m_opt = run->add_option("--m", m, "Selected atom (select)");
    run->add_option("--backend", cfg.backend, "exact or float")->transform(CLI::CheckedTransformer(backends));
    run->add_option("--format", cfg.format, "table, json or csv")->transform(CLI::CheckedTransformer(formats));
    auto* samples_opt = run->add_option("--samples", samples, "Sample outcomes (float backend)");
    auto* seed_opt = run->add_option("--seed", seed, "Sampling seed");
    run->add_flag("--dump-states", cfg.dump_states, "Print the state after every stage");
    run->add_flag("--inject-fault", cfg.inject_fault)->group("");

    std::size_t n_max = 12;
    Format sweep_format = Format::Table;
    CLI::App* sweep = app.add_subcommand("sweep", "Right-atom probability for n = 1..n-max");
    sweep->add_option("--n-max", n_max, "Largest row length (1..20)");
    sweep->add_option("--format", sweep_format, "table, json or csv")->transform(CLI::CheckedTransformer(formats));

    std::size_t check_n_max = 8;
    bool check_fault = false;
    CLI::App* check = app.add_subcommand("oracle-check", "Compare the engine with path enumeration");
    check->add_option("--n-max", check_n_max, "Largest row length (1..20)");
    check->add_flag("--inject-fault", check_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ifm::cli::kExitDiagnostics;
    }

    if (*run) {
        if (!file.empty()) cfg.file = file;
        if (*n_opt) cfg.n = n;
        if (*m_opt) cfg.m = m;
        if (*samples_opt) cfg.samples = samples;
        if (*seed_opt) cfg.seed = seed;
        return ifm::cli::cmd_run(cfg, std::cout, std::cerr);
    }
    if (*sweep) return ifm::cli::cmd_sweep(n_max, sweep_format, std::cout, std::cerr);
    return ifm::cli::cmd_oracle_check(check_n_max, check_fault, std::cout, std::cerr);
}
