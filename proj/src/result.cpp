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

#include "ifm/result.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ifm {

std::string Probability::exact_string() const {
    if (exact) return exact->to_string();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string Probability::decimal_string() const {
    char buf[40];
    // Avoid printing "-0.000000" for tiny negative float noise.
    std::snprintf(buf, sizeof buf, "%.6f", std::abs(value) < 5e-7 ? 0.0 : value);
    return buf;
}

std::string Probability::to_string() const {
    if (exact) return exact->to_string() + " (" + decimal_string() + ")";
    return decimal_string();
}

bool same_probability(const Probability& a, const Probability& b) {
    if (a.exact && b.exact) return *a.exact == *b.exact;
    return std::abs(a.value - b.value) <= 1e-12 * std::max(1.0, std::abs(a.value));
}

const Probability* ScenarioResult::conditional(std::string_view name) const {
    for (const auto& c : conditionals) {
        if (c.name == name) return &c.p;
    }
    return nullptr;
}

const Probability* ScenarioResult::joint_entry(std::string_view photon, std::string_view spins) const {
    for (const auto& e : joint) {
        if (e.photon == photon && e.spins == spins) return &e.p;
    }
    return nullptr;
}

bool ScenarioResult::all_checks_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.passed; });
}

std::string readout_string(const SpinConfig& spins, const std::vector<SpinBasis>& bases) {
    std::string out;
    for (std::size_t j = 1; j <= spins.size(); ++j) {
        if (!out.empty()) out += ' ';
        out += bases[j - 1] == SpinBasis::X ? 'X' : 'Z';
        if (spins.size() > 1) out += std::to_string(j);
        out += spins.is_plus(j) ? '+' : '-';
    }
    return out;
}

Probability joint_total(const std::vector<JointEntry>& joint) {
    bool all_exact = true;
    QuadRational exact(0);
    double value = 0.0;
    for (const auto& e : joint) {
        value += e.p.value;
        if (e.p.exact) {
            exact = exact + *e.p.exact;
        } else {
            all_exact = false;
        }
    }
    if (all_exact) return Probability::of(exact);
    return Probability::of(value);
}

std::optional<std::string> first_joint_difference(const std::vector<JointEntry>& a, const std::vector<JointEntry>& b) {
    const auto key = [](const JointEntry& e) { return std::make_pair(e.photon, e.spins); };
    std::vector<JointEntry> sa = a, sb = b;
    const auto by_key = [&](const JointEntry& x, const JointEntry& y) { return key(x) < key(y); };
    std::sort(sa.begin(), sa.end(), by_key);
    std::sort(sb.begin(), sb.end(), by_key);
    std::size_t i = 0, j = 0;
    const auto describe = [](const JointEntry& e, const std::string& lhs, const std::string& rhs) {
        return "photon=" + e.photon + " spins=" + e.spins + ": " + lhs + " vs " + rhs;
    };
    while (i < sa.size() || j < sb.size()) {
        if (j == sb.size() || (i < sa.size() && key(sa[i]) < key(sb[j]))) {
            return describe(sa[i], sa[i].p.to_string(), "absent");
        }
        if (i == sa.size() || key(sb[j]) < key(sa[i])) return describe(sb[j], "absent", sb[j].p.to_string());
        if (!same_probability(sa[i].p, sb[j].p)) return describe(sa[i], sa[i].p.to_string(), sb[j].p.to_string());
        ++i;
        ++j;
    }
    return std::nullopt;
}

}  // namespace ifm
