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

#include <map>
#include <set>

#include "ifm/dsl.hpp"

namespace ifm::dsl {

std::string Program::photon_name(Photon p) const {
    for (const auto& [mode, name] : mode_names) {
        if (mode == p.mode) return name;
    }
    return ifm::photon_name(p);
}

namespace {

/// Tracks which source names are bound to which engine modes and which of
/// them can still carry the photon.
class Checker {
   public:
    explicit Checker(std::vector<Diagnostic>& diags) : diags_(diags) {}

    CompileResult run(const ExperimentAst& ast) {
        if (ast.statements.empty()) {
            error({1, 1}, "missing 'atoms' declaration");
            return finish();
        }
        for (std::size_t k = 0; k < ast.statements.size(); ++k) {
            const Statement& st = ast.statements[k];
            const bool is_decl = std::holds_alternative<AtomsDecl>(st.kind);
            if (k == 0 && !is_decl) {
                error(st.where, "first statement must be 'atoms'");
                return finish();
            }
            if (k > 0 && is_decl) {
                error(st.where, "duplicate 'atoms' declaration");
                continue;
            }
            std::visit([&](const auto& s) { handle(s, st); }, st.kind);
        }
        return finish();
    }

   private:
    struct AtomState {
        bool crossed = false;
        bool measured = false;
        bool reversed = false;
    };

    void error(Location at, std::string message) { diags_.push_back({at, Severity::Error, std::move(message)}); }

    static Location arg(const Statement& st, std::size_t k) { return k < st.args.size() ? st.args[k] : st.where; }

    /// Resolves a mode that must currently be live.
    std::optional<Mode> live(const std::string& name, Location at) {
        const auto it = bound_.find(name);
        if (it == bound_.end()) {
            error(at, "undefined mode " + name);
            return std::nullopt;
        }
        if (!live_.count(name)) {
            error(at, "mode " + name + " used after it was consumed");
            return std::nullopt;
        }
        return it->second;
    }

    /// Binds a new source name to an engine mode.
    bool fresh(const std::string& name, Location at, Mode mode) {
        if (bound_.count(name)) {
            error(at, "mode " + name + " already defined");
            return false;
        }
        bound_[name] = mode;
        live_.insert(name);
        names_.emplace_back(mode, name);
        return true;
    }

    bool atom_in_range(std::size_t atom, Location at, const char* what) {
        if (atom >= 1 && atom <= n_) return true;
        if (std::string_view(what) == "measure") {
            error(at, "measure of undeclared atom " + std::to_string(atom) + " (atoms are 1.." + std::to_string(n_) + ")");
        } else {
            error(at, "atom index " + std::to_string(atom) + " out of range 1.." + std::to_string(n_));
        }
        return false;
    }

    void handle(const AtomsDecl& s, const Statement& st) {
        if (s.n < 1 || s.n > kMaxAtoms) {
            error(arg(st, 0), "atom count must be in 1.." + std::to_string(kMaxAtoms));
            n_ = 0;
            return;
        }
        n_ = s.n;
        atoms_.assign(n_ + 1, {});
        program_.n_atoms = n_;
        program_.bases.assign(n_, SpinBasis::Z);
        program_.ops.push_back(op::Prepare{n_});
        bound_["src"] = Mode::Source;
        live_.insert("src");
        names_.emplace_back(Mode::Source, "src");
    }

    void handle(const Split& s, const Statement& st) {
        if (split_used_) {
            error(st.where, "only one split is supported");
            return;
        }
        const auto in = live(s.in, arg(st, 0));
        if (!in) return;
        if (s.out1 == s.out2) {
            error(arg(st, 3), "split outputs must differ");
            return;
        }
        // The reflected output (first name) becomes arm u, the transmitted one arm v.
        if (!fresh(s.out1, arg(st, 2), Mode::U) || !fresh(s.out2, arg(st, 3), Mode::V)) return;
        split_used_ = true;
        live_.erase(s.in);
        ++stage_;
        program_.ops.push_back(op::Splitter{{*in, std::nullopt, Mode::V, Mode::U}});
    }

    void handle(const Cross& s, const Statement& st) {
        const auto arm = live(s.mode, arg(st, 0));
        if (!arm || !atom_in_range(s.atom, arg(st, 1), "cross")) return;
        AtomState& a = atoms_[s.atom];
        if (a.crossed) {
            error(arg(st, 1), "Absorbed channel of atom " + std::to_string(s.atom) + " already used");
            return;
        }
        if (a.measured) {
            error(arg(st, 1), "atom " + std::to_string(s.atom) + " already measured");
            return;
        }
        a.crossed = true;
        program_.ops.push_back(op::Interact{s.atom, *arm});
    }

    void handle(const Block& s, const Statement& st) {
        const auto arm = live(s.mode, arg(st, 0));
        if (!arm) return;
        if (blocked_used_) {
            error(st.where, "Blocked channel already used");
            return;
        }
        blocked_used_ = true;
        program_.ops.push_back(op::Obstacle{*arm});
    }

    void handle(const Merge& s, const Statement& st) {
        if (merge_used_) {
            error(st.where, "only one merge is supported");
            return;
        }
        const auto a = live(s.in1, arg(st, 0));
        const auto b = live(s.in2, arg(st, 1));
        if (!a || !b) return;
        if (s.in1 == s.in2) {
            error(arg(st, 1), "merge inputs must differ");
            return;
        }
        if (s.out1 == s.out2) {
            error(arg(st, 4), "merge outputs must differ");
            return;
        }
        if (!fresh(s.out1, arg(st, 3), Mode::C) || !fresh(s.out2, arg(st, 4), Mode::D)) return;
        merge_used_ = true;
        live_.erase(s.in1);
        live_.erase(s.in2);
        ++stage_;
        program_.ops.push_back(op::Splitter{{*a, *b, Mode::C, Mode::D}});
    }

    void handle(const Postselect& s, const Statement& st) {
        const auto mode = live(s.mode, arg(st, 0));
        if (!mode) return;
        if (postselect_stage_ == stage_) {
            error(st.where, "postselect already used in this stage");
            return;
        }
        postselect_stage_ = stage_;
        // Every other mode stops carrying the photon.
        live_.clear();
        live_.insert(s.mode);
        program_.ops.push_back(op::KeepMode{*mode, s.mode});
    }

    void handle(const MeasureSpin& s, const Statement& st) {
        if (!atom_in_range(s.atom, arg(st, 0), "measure")) return;
        AtomState& a = atoms_[s.atom];
        if (a.measured) {
            error(arg(st, 0), "atom " + std::to_string(s.atom) + " already measured");
            return;
        }
        if (a.reversed) {
            error(arg(st, 0), "atom " + std::to_string(s.atom) + " already reversed");
            return;
        }
        a.measured = true;
        if (s.basis == SpinBasis::X) {
            program_.ops.push_back(op::Reverse{s.atom});
            program_.bases[s.atom - 1] = SpinBasis::X;
        }
        if (s.keep) program_.ops.push_back(op::KeepSpin{s.atom, s.basis, *s.keep});
    }

    void handle(const ReverseField& s, const Statement& st) {
        if (!atom_in_range(s.atom, arg(st, 0), "reverse")) return;
        AtomState& a = atoms_[s.atom];
        if (a.measured || a.reversed) {
            error(arg(st, 0), "atom " + std::to_string(s.atom) + (a.measured ? " already measured" : " already reversed"));
            return;
        }
        a.reversed = true;
        program_.bases[s.atom - 1] = SpinBasis::X;
        program_.ops.push_back(op::Reverse{s.atom});
    }

    CompileResult finish() {
        CompileResult r;
        r.diagnostics = diags_;
        if (diags_.empty()) {
            program_.mode_names = names_;
            r.program = std::move(program_);
        }
        return r;
    }

    std::vector<Diagnostic>& diags_;
    Program program_;
    std::size_t n_ = 0;
    std::vector<AtomState> atoms_;
    std::map<std::string, Mode> bound_;
    std::set<std::string> live_;
    std::vector<std::pair<Mode, std::string>> names_;
    bool split_used_ = false, merge_used_ = false, blocked_used_ = false;
    int stage_ = 0;
    int postselect_stage_ = -1;
};

std::string spin_word(SpinBasis b, std::size_t atom, std::size_t n, Spin s) {
    std::string out(1, b == SpinBasis::X ? 'X' : 'Z');
    if (n > 1) out += std::to_string(atom);
    return out + (s == Spin::Plus ? '+' : '-');
}

template <Amplitude Amp>
ScenarioResult execute(const Program& program, const RunOptions& opts, std::string name) {
    ScenarioResult r;
    r.scenario = std::move(name);
    r.backend = AmplitudeTraits<Amp>::backend;
    r.n_atoms = program.n_atoms;
    PureState<Amp> s(program.n_atoms);
    std::vector<std::string> given;
    const auto condition = [&]() {
        std::string out;
        for (const auto& g : given) out += (out.empty() ? " | " : ", ") + g;
        return out;
    };
    const auto stage = [&](std::string label) {
        if (opts.record_stages) r.stages.emplace_back(std::move(label), dump_state(s));
    };
    for (const auto& operation : program.ops) {
        std::visit(
            [&](const auto& o) {
                using O = std::decay_t<decltype(o)>;
                if constexpr (std::is_same_v<O, op::Prepare>) {
                    s = prepare<Amp>(o.n);
                    stage("prepare");
                } else if constexpr (std::is_same_v<O, op::Splitter>) {
                    s = apply_beam_splitter(s, o.bs);
                    stage(o.bs.in2 ? "merge" : "split");
                } else if constexpr (std::is_same_v<O, op::Interact>) {
                    s = interact(s, o.atom, o.arm);
                    stage("cross " + std::to_string(o.atom));
                } else if constexpr (std::is_same_v<O, op::Obstacle>) {
                    s = apply_obstacle(s, o.arm);
                    stage("block");
                } else if constexpr (std::is_same_v<O, op::KeepMode>) {
                    auto kept = postselect(s, [&](const BasisLabel& l) { return l.photon.mode == o.mode; });
                    r.conditionals.push_back({"P(" + o.name + condition() + ")", to_probability<Amp>(kept.kept)});
                    given.push_back(o.name);
                    s = std::move(kept.state);
                    stage("postselect " + o.name);
                } else if constexpr (std::is_same_v<O, op::Reverse>) {
                    s = apply_spin_unitary(s, o.atom, reverse_field_unitary<Amp>());
                    stage("reverse " + std::to_string(o.atom));
                } else {
                    auto kept = postselect(s, [&](const BasisLabel& l) { return l.spins[o.atom] == o.value; });
                    const std::string word = spin_word(o.basis, o.atom, program.n_atoms, o.value);
                    r.conditionals.push_back({"P(" + word + condition() + ")", to_probability<Amp>(kept.kept)});
                    given.push_back(word);
                    s = std::move(kept.state);
                    stage("keep " + word);
                }
            },
            operation);
        if (s.empty()) throw EmptyOutcomeError("post-selection left no outcomes");
    }
    r.bases = program.bases;
    r.joint = make_joint(s, r.bases, [&](Photon p) { return program.photon_name(p); });
    r.checks.push_back({"joint distribution sums to 1",
                        same_probability(joint_total(r.joint), Probability::of(QuadRational(1)))});
    return r;
}

}  // namespace

CompileResult check_and_compile(const ExperimentAst& ast) {
    std::vector<Diagnostic> diags;
    Checker checker(diags);
    return checker.run(ast);
}

ScenarioResult run_program(const Program& program, const RunOptions& opts, std::string name) {
    if (opts.backend == Backend::Exact) return execute<CycloAmp>(program, opts, std::move(name));
    return execute<FloatAmp>(program, opts, std::move(name));
}

}  // namespace ifm::dsl
