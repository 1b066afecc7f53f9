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

#include <charconv>
#include <cctype>

#include "ifm/dsl.hpp"

namespace ifm::dsl {

std::string Diagnostic::format(std::string_view file) const {
    return std::string(file) + ":" + std::to_string(where.line) + ":" + std::to_string(where.column) + ": " +
           (severity == Severity::Error ? "error" : "warning") + ": " + message;
}

namespace {

enum class Tok { Ident, Int, Arrow, Plus, Minus };

struct Token {
    Tok kind;
    std::string text;
    Location where;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// Splits one line into tokens; returns false after reporting a lexical error.
bool lex_line(std::string_view line, int line_no, std::vector<Token>& out, std::vector<Diagnostic>& diags) {
    std::size_t k = 0;
    while (k < line.size()) {
        const char c = line[k];
        const Location at{line_no, static_cast<int>(k) + 1};
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r') {
            ++k;
        } else if (ident_start(c)) {
            std::size_t end = k;
            while (end < line.size() && ident_char(line[end])) ++end;
            out.push_back({Tok::Ident, std::string(line.substr(k, end - k)), at});
            k = end;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t end = k;
            while (end < line.size() && std::isdigit(static_cast<unsigned char>(line[end]))) ++end;
            out.push_back({Tok::Int, std::string(line.substr(k, end - k)), at});
            k = end;
        } else if (c == '-' && k + 1 < line.size() && line[k + 1] == '>') {
            out.push_back({Tok::Arrow, "->", at});
            k += 2;
        } else if (c == '+' || c == '-') {
            out.push_back({c == '+' ? Tok::Plus : Tok::Minus, std::string(1, c), at});
            ++k;
        } else {
            const bool ascii = static_cast<unsigned char>(c) < 0x80;
            diags.push_back({at, Severity::Error,
                             ascii ? "lexical error: unexpected character '" + std::string(1, c) + "'"
                                   : std::string("lexical error: non-ASCII character")});
            return false;
        }
    }
    return true;
}

struct Signature {
    std::string_view keyword;
    std::string_view usage;
    std::vector<Tok> args;
};

const std::vector<Signature>& signatures() {
    static const std::vector<Signature> table = {
        {"atoms", "atoms <count>", {Tok::Int}},
        {"split", "split <mode> -> <mode> <mode>", {Tok::Ident, Tok::Arrow, Tok::Ident, Tok::Ident}},
        {"cross", "cross <mode> <atom>", {Tok::Ident, Tok::Int}},
        {"block", "block <mode>", {Tok::Ident}},
        {"merge", "merge <mode> <mode> -> <mode> <mode>", {Tok::Ident, Tok::Ident, Tok::Arrow, Tok::Ident, Tok::Ident}},
        {"postselect", "postselect <mode>", {Tok::Ident}},
        {"measure", "measure <atom> x|z [keep +|-]", {Tok::Int, Tok::Ident}},
        {"reverse", "reverse <atom>", {Tok::Int}},
    };
    return table;
}

std::string_view describe(Tok t) {
    switch (t) {
        case Tok::Ident: return "mode name expected";
        case Tok::Int: return "integer expected";
        case Tok::Arrow: return "'->' expected";
        default: return "'+' or '-' expected";
    }
}

class LineParser {
   public:
    LineParser(const std::vector<Token>& toks, int line_no, std::size_t line_len, std::vector<Diagnostic>& diags)
        : toks_(toks), line_no_(line_no), end_col_(static_cast<int>(line_len) + 1), diags_(diags) {}

    std::optional<Statement> run() {
        const Token& kw = toks_.front();
        if (kw.kind != Tok::Ident) return fail(kw.where, "statement must start with a keyword");
        const Signature* sig = nullptr;
        for (const auto& s : signatures()) {
            if (s.keyword == kw.text) sig = &s;
        }
        if (sig == nullptr) return fail(kw.where, "unknown keyword '" + kw.text + "'");

        const std::size_t given = toks_.size() - 1;
        std::size_t expected = sig->args.size();
        if (kw.text == "measure" && given == 4) expected = 4;
        if (given != expected) {
            const Location at = given > expected ? toks_[expected + 1].where : Location{line_no_, end_col_};
            return fail(at, "arity mismatch: '" + kw.text + "' takes " + std::to_string(sig->args.size()) +
                                (kw.text == "measure" ? " or 4" : "") + " arguments, got " + std::to_string(given) +
                                " (usage: " + std::string(sig->usage) + ")");
        }
        for (std::size_t k = 0; k < sig->args.size(); ++k) {
            const Token& t = toks_[k + 1];
            if (t.kind != sig->args[k]) return fail(t.where, std::string(describe(sig->args[k])));
        }

        Statement st;
        st.where = kw.where;
        for (std::size_t k = 1; k < toks_.size(); ++k) st.args.push_back(toks_[k].where);
        const auto arg = [&](std::size_t k) -> const Token& { return toks_[k + 1]; };

        if (kw.text == "atoms") {
            const auto n = integer(arg(0));
            if (!n) return std::nullopt;
            st.kind = AtomsDecl{*n};
        } else if (kw.text == "split") {
            st.kind = Split{arg(0).text, arg(2).text, arg(3).text};
        } else if (kw.text == "cross") {
            const auto j = integer(arg(1));
            if (!j) return std::nullopt;
            st.kind = Cross{arg(0).text, *j};
        } else if (kw.text == "block") {
            st.kind = Block{arg(0).text};
        } else if (kw.text == "merge") {
            st.kind = Merge{arg(0).text, arg(1).text, arg(3).text, arg(4).text};
        } else if (kw.text == "postselect") {
            st.kind = Postselect{arg(0).text};
        } else if (kw.text == "reverse") {
            const auto j = integer(arg(0));
            if (!j) return std::nullopt;
            st.kind = ReverseField{*j};
        } else {
            const auto j = integer(arg(0));
            if (!j) return std::nullopt;
            MeasureSpin m{*j, SpinBasis::Z, std::nullopt};
            if (arg(1).text == "x") {
                m.basis = SpinBasis::X;
            } else if (arg(1).text != "z") {
                return fail(arg(1).where, "spin basis must be 'x' or 'z'");
            }
            if (given == 4) {
                if (arg(2).kind != Tok::Ident || arg(2).text != "keep") return fail(arg(2).where, "'keep' expected");
                if (arg(3).kind == Tok::Plus) {
                    m.keep = Spin::Plus;
                } else if (arg(3).kind == Tok::Minus) {
                    m.keep = Spin::Minus;
                } else {
                    return fail(arg(3).where, "'+' or '-' expected");
                }
            }
            st.kind = m;
        }
        return st;
    }

   private:
    std::optional<Statement> fail(Location at, std::string message) {
        diags_.push_back({at, Severity::Error, std::move(message)});
        return std::nullopt;
    }

    std::optional<std::size_t> integer(const Token& t) {
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size() || value > 1'000'000) {
            fail(t.where, "integer too large");
            return std::nullopt;
        }
        return value;
    }

    const std::vector<Token>& toks_;
    int line_no_;
    int end_col_;
    std::vector<Diagnostic>& diags_;
};

const char* basis_word(SpinBasis b) { return b == SpinBasis::X ? "x" : "z"; }

}  // namespace

ParseResult parse(std::string_view source) {
    ParseResult result;
    ExperimentAst ast;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= source.size()) {
        std::size_t end = source.find('\n', start);
        if (end == std::string_view::npos) end = source.size();
        const std::string_view line = source.substr(start, end - start);
        ++line_no;
        std::vector<Token> toks;
        if (lex_line(line, line_no, toks, result.diagnostics) && !toks.empty()) {
            LineParser p(toks, line_no, line.size(), result.diagnostics);
            if (auto st = p.run()) ast.statements.push_back(std::move(*st));
        }
        if (end == source.size()) break;
        start = end + 1;
    }
    if (result.diagnostics.empty()) result.ast = std::move(ast);
    return result;
}

std::string render(const ExperimentAst& ast) {
    std::string out;
    for (const auto& st : ast.statements) {
        std::visit(
            [&](const auto& s) {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, AtomsDecl>) {
                    out += "atoms " + std::to_string(s.n);
                } else if constexpr (std::is_same_v<S, Split>) {
                    out += "split " + s.in + " -> " + s.out1 + " " + s.out2;
                } else if constexpr (std::is_same_v<S, Cross>) {
                    out += "cross " + s.mode + " " + std::to_string(s.atom);
                } else if constexpr (std::is_same_v<S, Block>) {
                    out += "block " + s.mode;
                } else if constexpr (std::is_same_v<S, Merge>) {
                    out += "merge " + s.in1 + " " + s.in2 + " -> " + s.out1 + " " + s.out2;
                } else if constexpr (std::is_same_v<S, Postselect>) {
                    out += "postselect " + s.mode;
                } else if constexpr (std::is_same_v<S, MeasureSpin>) {
                    out += "measure " + std::to_string(s.atom) + " " + basis_word(s.basis);
                    if (s.keep) out += std::string(" keep ") + (*s.keep == Spin::Plus ? "+" : "-");
                } else {
                    out += "reverse " + std::to_string(s.atom);
                }
            },
            st.kind);
        out += '\n';
    }
    return out;
}

}  // namespace ifm::dsl
