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
 * Brute-force path enumeration for the n-atom row, written independently of
 * the state engine. Each history (photon arm x spin configuration) gets its
 * amplitude as a product of literal factors:
 *
 *   atom j:        i/sqrt2 for Z+, 1/sqrt2 for Z-
 *   first splitter: i/sqrt2 into u, 1/sqrt2 into v
 *   arm v:         absorbed by the first Z+ atom; otherwise blocked when the
 *                  obstacle is present
 *   second splitter: u -> (c + i d)/sqrt2, v -> (d + i c)/sqrt2
 *
 * Amplitudes are kept as Gaussian-integer numerators over sqrt2^e and
 * interfering paths are summed per final label.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ifm/checked_int.hpp"
#include "ifm/result.hpp"

namespace ifm::oracle {

/// Largest row the enumeration accepts.
inline constexpr std::size_t kMaxAtoms = 20;
/// Largest row for which an all-X readout (a 4^n transform) is offered.
inline constexpr std::size_t kMaxAtomsXReadout = 10;

/// (re + i im) / sqrt2^exponent
struct GaussianAmp {
    Int re = 0;
    Int im = 0;
    int exponent = 0;

    bool is_zero() const { return re == 0 && im == 0; }
    friend bool operator==(const GaussianAmp&, const GaussianAmp&) = default;
};

/// One history's contribution to a final label.
struct PathContribution {
    /// "u" or "v": the arm taken after the first splitter.
    std::string arm;
    GaussianAmp amplitude;
};

/// Final photon labels: "c", "d", "absorbed(j)", "blocked".
/// `z_mask` bit (j - 1) set means atom j is in Z+.
std::vector<PathContribution> paths_to(std::size_t n, bool obstacle, const std::string& photon, std::uint32_t z_mask);

/// Summed amplitude of a final Z-basis label.
GaussianAmp amplitude_of(std::size_t n, bool obstacle, const std::string& photon, std::uint32_t z_mask);

/// Joint distribution of the row with every atom read out in `basis`,
/// labelled like the engine reports ("d", "Z1+ Z2- Z3+"). Conditionals:
/// P(absorbed), P(blocked), P(c), P(d), and for the Z readout
/// P(d AND all Z-) and P(Z<m>+ | d) for every m.
ScenarioResult brute_force_oracle(std::size_t n, bool obstacle = false, SpinBasis basis = SpinBasis::Z);

/// P(atom m found Z+ | d) without building the joint table.
QuadRational right_atom(std::size_t n, std::size_t m);

}  // namespace ifm::oracle
