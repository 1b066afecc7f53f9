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
 * Backend-independent experiment reports: a joint outcome distribution over
 * (photon mode, spin readout) plus named conditional probabilities.
 */

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ifm/state.hpp"

namespace ifm {

/// A probability as an exact ratio (exact backend only) and a double.
struct Probability {
    std::optional<QuadRational> exact;
    double value = 0.0;

    static Probability of(const QuadRational& r) { return {r, r.to_double()}; }
    static Probability of(double d) { return {std::nullopt, d}; }

    /// "7/16" on the exact backend, "0.4375" style otherwise.
    std::string exact_string() const;
    /// Six-place decimal, "0.437500".
    std::string decimal_string() const;
    /// "7/16 (0.437500)" or "0.437500".
    std::string to_string() const;
};

/// Exact when both sides are exact, otherwise within a relative 1e-12.
bool same_probability(const Probability& a, const Probability& b);

struct JointEntry {
    std::string photon;
    /// Readout text, e.g. "X1+ Z2+ X3+"; the atom index is omitted for a single
    /// atom ("X+") and the text is empty without atoms.
    std::string spins;
    Probability p;
};

struct NamedProbability {
    std::string name;
    Probability p;
};

struct NamedCheck {
    std::string name;
    bool passed = false;
};

struct ScenarioResult {
    std::string scenario;
    Backend backend = Backend::Exact;
    std::size_t n_atoms = 0;
    /// Readout basis of each atom (index 0 is atom 1).
    std::vector<SpinBasis> bases;
    /// Nonzero outcomes, in label order.
    std::vector<JointEntry> joint;
    std::vector<NamedProbability> conditionals;
    std::vector<NamedCheck> checks;
    std::vector<std::string> notes;
    /// (stage name, state dump) in execution order; filled on request.
    std::vector<std::pair<std::string, std::string>> stages;

    const Probability* conditional(std::string_view name) const;
    const Probability* joint_entry(std::string_view photon, std::string_view spins) const;
    bool all_checks_passed() const;
};

/// Renders a spin configuration in the given per-atom bases.
std::string readout_string(const SpinConfig& spins, const std::vector<SpinBasis>& bases);

/// Sum of all joint entries (exact when every entry is exact).
Probability joint_total(const std::vector<JointEntry>& joint);

/// Describes the first entry where two joints differ, or nullopt when they
/// agree (exactly, or within tolerance when either side is floating point).
std::optional<std::string> first_joint_difference(const std::vector<JointEntry>& a, const std::vector<JointEntry>& b);

using PhotonNamer = std::function<std::string(Photon)>;

/// Converts a ratio of the backend into a report probability.
template <Amplitude Amp>
Probability to_probability(const RatioOf<Amp>& r) {
    using T = AmplitudeTraits<Amp>;
    if (const auto exact = T::exact(r)) return Probability::of(*exact);
    return Probability::of(T::to_double(r));
}

/// Normalized joint distribution of a final state. The state stores X readouts
/// in the Z slots of atoms whose basis is X (the reverse field was applied).
template <Amplitude Amp>
std::vector<JointEntry> make_joint(const PureState<Amp>& s, const std::vector<SpinBasis>& bases,
                                   const PhotonNamer& namer = photon_name) {
    using T = AmplitudeTraits<Amp>;
    if (bases.size() != s.n_atoms()) throw EngineError("one readout basis per atom required");
    const auto total = norm_sq(s);
    if (T::real_is_zero(total)) throw EngineError("joint distribution of an empty state");
    std::vector<JointEntry> joint;
    joint.reserve(s.size());
    for (const auto& [label, a] : s.terms()) {
        joint.push_back({namer(label.photon), readout_string(label.spins, bases),
                         to_probability<Amp>(T::ratio(T::norm_sq(a), total))});
    }
    return joint;
}

/// Probability mass of the labels satisfying `pred`, relative to `s`.
template <Amplitude Amp, class Pred>
Probability mass(const PureState<Amp>& s, Pred&& pred) {
    return to_probability<Amp>(postselect(s, std::forward<Pred>(pred)).kept);
}

}  // namespace ifm
