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

#include "ifm/state.hpp"

#include <cstdio>

namespace ifm {

std::string_view mode_name(Mode m) {
    switch (m) {
        case Mode::Source: return "src";
        case Mode::U: return "u";
        case Mode::V: return "v";
        case Mode::C: return "c";
        case Mode::D: return "d";
        case Mode::Absorbed: return "absorbed";
        case Mode::Blocked: return "blocked";
    }
    return "?";
}

std::string photon_name(Photon p) {
    if (p.mode == Mode::Absorbed) return "absorbed(" + std::to_string(p.atom) + ")";
    return std::string(mode_name(p.mode));
}

std::string SpinConfig::to_string() const {
    std::string out(n_, '-');
    for (std::size_t j = 1; j <= n_; ++j) {
        if (is_plus(j)) out[j - 1] = '+';
    }
    return out;
}

SpinConfig SpinConfig::parse(std::string_view text) {
    if (text.size() > kMaxAtoms) throw EngineError("spin configuration too long");
    std::uint32_t mask = 0;
    for (std::size_t j = 0; j < text.size(); ++j) {
        if (text[j] == '+') {
            mask |= 1u << j;
        } else if (text[j] != '-') {
            throw EngineError("spin configuration must consist of '+' and '-'");
        }
    }
    return {text.size(), mask};
}

std::string BasisLabel::to_string() const { return "photon=" + photon_name(photon) + " spins=" + spins.to_string(); }

std::string amplitude_to_string(const CycloAmp& a) { return a.to_string(); }

std::string amplitude_to_string(const FloatAmp& a) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", a.real(), a.imag());
    return buf;
}

}  // namespace ifm
