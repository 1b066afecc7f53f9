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
 * Sparse pure states over (photon mode) x (atom spins) and the operations of
 * a single-photon Mach-Zehnder network interacting with spin-1/2 atoms.
 *
 * States are values: every operation returns a new state. Atoms are indexed
 * 1..n. The computational spin basis is Z; X-basis quantities are obtained by
 * applying the reverse field first.
 */

#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ifm/amplitude_traits.hpp"
#include "ifm/exact_amplitude.hpp"

namespace ifm {

/// Largest supported atom count (spins are packed into a 32-bit mask).
inline constexpr std::size_t kMaxAtoms = 24;

/// Precondition violation inside the engine.
class EngineError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

enum class Mode : std::uint8_t { Source, U, V, C, D, Absorbed, Blocked };

/// "src", "u", "v", "c", "d", "absorbed", "blocked".
std::string_view mode_name(Mode m);

struct Photon {
    Mode mode = Mode::Source;
    /// Atom index for Mode::Absorbed, 0 otherwise.
    std::uint8_t atom = 0;

    static Photon in(Mode m) { return {m, 0}; }
    static Photon absorbed(std::size_t atom) { return {Mode::Absorbed, static_cast<std::uint8_t>(atom)}; }

    auto operator<=>(const Photon&) const = default;
};

/// "d", "absorbed(2)", ...
std::string photon_name(Photon p);

enum class Spin : std::uint8_t { Plus, Minus };
enum class SpinBasis : std::uint8_t { Z, X };

/// Z-basis configuration of n atoms; bit (j - 1) of the mask is set when atom
/// j is in Z+.
class SpinConfig {
   public:
    SpinConfig() = default;
    SpinConfig(std::size_t n, std::uint32_t plus_mask) : plus_mask_(plus_mask), n_(static_cast<std::uint8_t>(n)) {}

    std::size_t size() const { return n_; }
    std::uint32_t plus_mask() const { return plus_mask_; }
    bool is_plus(std::size_t atom) const { return (plus_mask_ >> (atom - 1)) & 1u; }
    Spin operator[](std::size_t atom) const { return is_plus(atom) ? Spin::Plus : Spin::Minus; }
    std::size_t count_plus() const { return static_cast<std::size_t>(std::popcount(plus_mask_)); }

    SpinConfig with(std::size_t atom, Spin s) const {
        const std::uint32_t bit = 1u << (atom - 1);
        return {n_, s == Spin::Plus ? (plus_mask_ | bit) : (plus_mask_ & ~bit)};
    }

    /// One '+' / '-' per atom, atom 1 first.
    std::string to_string() const;
    /// Inverse of to_string(); throws EngineError on other characters.
    static SpinConfig parse(std::string_view text);

    auto operator<=>(const SpinConfig&) const = default;

   private:
    std::uint32_t plus_mask_ = 0;
    std::uint8_t n_ = 0;
};

struct BasisLabel {
    Photon photon;
    SpinConfig spins;

    /// "photon=<mode> spins=<+-+>"
    std::string to_string() const;

    auto operator<=>(const BasisLabel&) const = default;
};

std::string amplitude_to_string(const CycloAmp& a);
std::string amplitude_to_string(const FloatAmp& a);

/// Unnormalized superposition of basis labels, stored as a sorted, duplicate
/// free list of nonzero terms.
template <Amplitude Amp>
class PureState {
   public:
    using Term = std::pair<BasisLabel, Amp>;
    using Traits = AmplitudeTraits<Amp>;

    explicit PureState(std::size_t n_atoms = 0) : n_atoms_(n_atoms) {
        if (n_atoms > kMaxAtoms) throw EngineError("atom count exceeds supported maximum");
    }

    /// Sums duplicate labels and drops zero amplitudes.
    static PureState from_terms(std::size_t n_atoms, std::vector<Term> terms) {
        PureState s(n_atoms);
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        s.terms_.reserve(terms.size());
        for (auto& term : terms) {
            if (term.first.spins.size() != n_atoms) throw EngineError("basis label has wrong atom count");
            if (!s.terms_.empty() && s.terms_.back().first == term.first) {
                s.terms_.back().second += term.second;
            } else {
                if (!s.terms_.empty() && Traits::is_zero(s.terms_.back().second)) s.terms_.pop_back();
                s.terms_.push_back(std::move(term));
            }
        }
        if (!s.terms_.empty() && Traits::is_zero(s.terms_.back().second)) s.terms_.pop_back();
        return s;
    }

    std::size_t n_atoms() const { return n_atoms_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    Amp amplitude(const BasisLabel& label) const {
        const auto it = std::lower_bound(terms_.begin(), terms_.end(), label,
                                         [](const Term& t, const BasisLabel& l) { return t.first < l; });
        if (it == terms_.end() || it->first != label) return Amp(0);
        return it->second;
    }

    bool occupies(Photon p) const {
        return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.first.photon == p; });
    }
    bool occupies(Mode m) const {
        return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.first.photon.mode == m; });
    }

    PureState scaled(const Amp& factor) const {
        std::vector<Term> out = terms_;
        for (auto& t : out) t.second *= factor;
        return from_terms(n_atoms_, std::move(out));
    }

    friend bool operator==(const PureState& a, const PureState& b) {
        return a.n_atoms_ == b.n_atoms_ && a.terms_ == b.terms_;
    }

   private:
    std::size_t n_atoms_;
    std::vector<Term> terms_;
};

/// A hand-written term, e.g. {Photon::in(Mode::D), "+-+", CycloAmp::i()}.
struct LiteralTerm {
    Photon photon;
    std::string_view spins;
    CycloAmp amplitude;
};

/// Builds a state from literal terms (transcriptions of printed states).
template <Amplitude Amp>
PureState<Amp> make_state(std::size_t n_atoms, const std::vector<LiteralTerm>& literal) {
    std::vector<typename PureState<Amp>::Term> terms;
    terms.reserve(literal.size());
    for (const auto& t : literal) {
        terms.emplace_back(BasisLabel{t.photon, SpinConfig::parse(t.spins)},
                           AmplitudeTraits<Amp>::from_exact(t.amplitude));
    }
    return PureState<Amp>::from_terms(n_atoms, std::move(terms));
}

template <class Amp>
using SpinUnitary2 = Eigen::Matrix<Amp, 2, 2>;

namespace detail {

inline std::size_t spin_index(Spin s) { return s == Spin::Plus ? 0 : 1; }

inline void check_atom(std::size_t n_atoms, std::size_t atom) {
    if (atom < 1 || atom > n_atoms) {
        throw EngineError("atom index " + std::to_string(atom) + " out of range [1, " + std::to_string(n_atoms) + "]");
    }
}

inline bool is_flight_mode(Mode m) { return m != Mode::Absorbed && m != Mode::Blocked; }

/// i^e / sqrt2^k, exactly.
inline CycloAmp phase_over_sqrt2(unsigned e, int k) {
    CycloAmp::Coeffs c{0, 0, 0, 0};
    switch (e % 4) {
        case 0: c[0] = 1; break;
        case 1: c[2] = 1; break;
        case 2: c[0] = -1; break;
        default: c[2] = -1; break;
    }
    return CycloAmp(c, k);
}

}  // namespace detail

/// The splitting field M, columns being the images of X+ and X- in the
/// (Z+, Z-) basis: M = [[i, 1], [1, i]] / sqrt2. Maps X+ to (i Z+ + Z-)/sqrt2.
template <class Amp>
SpinUnitary2<Amp> field_unitary() {
    using T = AmplitudeTraits<Amp>;
    const Amp r = T::from_exact(CycloAmp::inv_sqrt2());
    const Amp ir = T::from_exact(CycloAmp::i().divided_by_sqrt2());
    SpinUnitary2<Amp> m;
    m << ir, r, r, ir;
    return m;
}

/// The reverse field, M^-1 = M^dagger.
template <class Amp>
SpinUnitary2<Amp> reverse_field_unitary() {
    return field_unitary<Amp>().adjoint();
}

template <class Amp>
bool is_unitary(const SpinUnitary2<Amp>& u) {
    using T = AmplitudeTraits<Amp>;
    const SpinUnitary2<Amp> p = u * u.adjoint();
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const Amp expected = Amp(r == c ? 1 : 0);
            if (!T::negligible(p(r, c) - expected, RealOf<Amp>(1))) return false;
        }
    }
    return true;
}

/// Photon at the source, every atom in (i|Z+> + |Z->)/sqrt2.
template <Amplitude Amp>
PureState<Amp> prepare(std::size_t n_atoms) {
    using T = AmplitudeTraits<Amp>;
    if (n_atoms > kMaxAtoms) throw EngineError("atom count exceeds supported maximum");
    std::vector<typename PureState<Amp>::Term> terms;
    terms.reserve(std::size_t{1} << n_atoms);
    const int k = static_cast<int>(n_atoms);
    // All amplitudes take one of four values; convert each once.
    std::array<Amp, 4> by_phase;
    for (unsigned e = 0; e < 4; ++e) by_phase[e] = T::from_exact(detail::phase_over_sqrt2(e, k));
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n_atoms); ++mask) {
        terms.emplace_back(BasisLabel{Photon::in(Mode::Source), SpinConfig(n_atoms, mask)},
                           by_phase[std::popcount(mask) % 4]);
    }
    return PureState<Amp>::from_terms(n_atoms, std::move(terms));
}

/// Beam splitter with real transmission 1/sqrt2 and reflection i/sqrt2:
///   |in1> -> (|out1> + i|out2>)/sqrt2,   |in2> -> (|out2> + i|out1>)/sqrt2.
struct BeamSplitter {
    Mode in1;
    std::optional<Mode> in2;
    Mode out1;
    Mode out2;

    friend bool operator==(const BeamSplitter&, const BeamSplitter&) = default;
};

template <Amplitude Amp>
PureState<Amp> apply_beam_splitter(const PureState<Amp>& s, const BeamSplitter& bs) {
    using T = AmplitudeTraits<Amp>;
    const std::array<Mode, 2> outs{bs.out1, bs.out2};
    std::vector<Mode> ins{bs.in1};
    if (bs.in2) ins.push_back(*bs.in2);
    for (Mode m : ins) {
        if (!detail::is_flight_mode(m)) throw EngineError("beam splitter input must be a propagating mode");
        if (m == bs.out1 || m == bs.out2) throw EngineError("beam splitter input and output modes must differ");
    }
    if (bs.in2 && *bs.in2 == bs.in1) throw EngineError("beam splitter inputs must differ");
    if (bs.out1 == bs.out2) throw EngineError("beam splitter outputs must differ");
    for (Mode m : outs) {
        if (!detail::is_flight_mode(m)) throw EngineError("beam splitter output must be a propagating mode");
        if (s.occupies(m)) {
            throw EngineError("beam splitter output mode " + std::string(mode_name(m)) + " is already occupied");
        }
    }

    const Amp t = T::from_exact(CycloAmp::inv_sqrt2());
    const Amp r = T::from_exact(CycloAmp::i().divided_by_sqrt2());
    std::vector<typename PureState<Amp>::Term> out;
    out.reserve(2 * s.size());
    for (const auto& [label, a] : s.terms()) {
        const Mode m = label.photon.mode;
        if (m == bs.in1) {
            out.emplace_back(BasisLabel{Photon::in(bs.out1), label.spins}, a * t);
            out.emplace_back(BasisLabel{Photon::in(bs.out2), label.spins}, a * r);
        } else if (bs.in2 && m == *bs.in2) {
            out.emplace_back(BasisLabel{Photon::in(bs.out2), label.spins}, a * t);
            out.emplace_back(BasisLabel{Photon::in(bs.out1), label.spins}, a * r);
        } else {
            out.emplace_back(label, a);
        }
    }
    return PureState<Amp>::from_terms(s.n_atoms(), std::move(out));
}

template <Amplitude Amp>
PureState<Amp> apply_spin_unitary(const PureState<Amp>& s, std::size_t atom, const SpinUnitary2<Amp>& u) {
    detail::check_atom(s.n_atoms(), atom);
    if (!is_unitary(u)) throw EngineError("spin operator is not unitary");
    using T = AmplitudeTraits<Amp>;
    std::vector<typename PureState<Amp>::Term> out;
    out.reserve(2 * s.size());
    for (const auto& [label, a] : s.terms()) {
        const auto col = detail::spin_index(label.spins[atom]);
        for (Spin row : {Spin::Plus, Spin::Minus}) {
            const Amp& coeff = u(detail::spin_index(row), col);
            if (T::is_zero(coeff)) continue;
            out.emplace_back(BasisLabel{label.photon, label.spins.with(atom, row)}, coeff * a);
        }
    }
    return PureState<Amp>::from_terms(s.n_atoms(), std::move(out));
}

/// Photon on `arm` meets atom in its Z+ box: |arm, Z+> <-> |absorbed(atom), Z+>.
template <Amplitude Amp>
PureState<Amp> interact(const PureState<Amp>& s, std::size_t atom, Mode arm = Mode::V) {
    detail::check_atom(s.n_atoms(), atom);
    if (!detail::is_flight_mode(arm)) throw EngineError("interaction arm must be a propagating mode");
    if (s.occupies(Photon::absorbed(atom))) {
        throw EngineError("absorption channel of atom " + std::to_string(atom) + " is already occupied");
    }
    std::vector<typename PureState<Amp>::Term> out(s.terms().begin(), s.terms().end());
    for (auto& [label, a] : out) {
        if (label.photon.mode == arm && label.spins.is_plus(atom)) label.photon = Photon::absorbed(atom);
    }
    return PureState<Amp>::from_terms(s.n_atoms(), std::move(out));
}

/// Macroscopic obstacle on `arm`: |arm> -> |blocked>.
template <Amplitude Amp>
PureState<Amp> apply_obstacle(const PureState<Amp>& s, Mode arm = Mode::V) {
    if (!detail::is_flight_mode(arm)) throw EngineError("obstacle arm must be a propagating mode");
    if (s.occupies(Mode::Blocked)) throw EngineError("blocked channel is already occupied");
    std::vector<typename PureState<Amp>::Term> out(s.terms().begin(), s.terms().end());
    for (auto& [label, a] : out) {
        if (label.photon.mode == arm) label.photon = Photon::in(Mode::Blocked);
    }
    return PureState<Amp>::from_terms(s.n_atoms(), std::move(out));
}

template <Amplitude Amp>
RealOf<Amp> norm_sq(const PureState<Amp>& s) {
    RealOf<Amp> total{};
    for (const auto& [label, a] : s.terms()) total += AmplitudeTraits<Amp>::norm_sq(a);
    return total;
}

template <Amplitude Amp>
struct PostselectResult {
    PureState<Amp> state;
    /// norm^2(kept) / norm^2(input); zero for an empty input.
    RatioOf<Amp> kept;
    /// Nothing survived. A legitimate answer, not an error.
    bool empty = false;
};

/// Keeps the terms whose label satisfies `keep`. The kept state is not
/// renormalized.
template <Amplitude Amp, class Pred>
PostselectResult<Amp> postselect(const PureState<Amp>& s, Pred&& keep) {
    using T = AmplitudeTraits<Amp>;
    std::vector<typename PureState<Amp>::Term> kept;
    for (const auto& term : s.terms()) {
        if (keep(term.first)) kept.push_back(term);
    }
    PostselectResult<Amp> result{PureState<Amp>::from_terms(s.n_atoms(), std::move(kept)), RatioOf<Amp>{}, false};
    const auto total = norm_sq(s);
    if (!T::real_is_zero(total)) result.kept = T::ratio(norm_sq(result.state), total);
    result.empty = result.state.empty();
    return result;
}

template <Amplitude Amp>
struct MeasurementOutcome {
    SpinBasis basis;
    Spin value;
    /// Unnormalized: the two outcomes of one measurement sum to norm^2 of the
    /// measured state.
    RealOf<Amp> probability;
    /// Projected state, expressed in the measured basis frame.
    PureState<Amp> collapsed;
};

/// Projective spin measurement. X is done as reverse field, then Z.
template <Amplitude Amp>
std::array<MeasurementOutcome<Amp>, 2> measure_spin(const PureState<Amp>& s, std::size_t atom, SpinBasis basis) {
    detail::check_atom(s.n_atoms(), atom);
    const PureState<Amp> frame = basis == SpinBasis::X ? apply_spin_unitary(s, atom, reverse_field_unitary<Amp>()) : s;
    std::array<MeasurementOutcome<Amp>, 2> out{
        MeasurementOutcome<Amp>{basis, Spin::Plus, {}, PureState<Amp>(s.n_atoms())},
        MeasurementOutcome<Amp>{basis, Spin::Minus, {}, PureState<Amp>(s.n_atoms())}};
    for (auto& outcome : out) {
        auto projected = postselect(frame, [&](const BasisLabel& l) { return l.spins[atom] == outcome.value; });
        outcome.probability = norm_sq(projected.state);
        outcome.collapsed = std::move(projected.state);
    }
    return out;
}

/// True iff s = (state of `atom`) (x) (state of everything else), i.e. the
/// 2 x R coefficient matrix has rank one.
template <Amplitude Amp>
bool is_product(const PureState<Amp>& s, std::size_t atom) {
    using T = AmplitudeTraits<Amp>;
    if (s.empty()) throw EngineError("is_product requires a nonempty state");
    detail::check_atom(s.n_atoms(), atom);
    const std::uint32_t bit = 1u << (atom - 1);
    std::map<std::pair<Photon, std::uint32_t>, std::pair<Amp, Amp>> columns;
    for (const auto& [label, a] : s.terms()) {
        auto& col = columns[{label.photon, label.spins.plus_mask() & ~bit}];
        (label.spins.is_plus(atom) ? col.first : col.second) = a;
    }
    const auto scale = norm_sq(s);
    // Every column must be parallel to one nonzero reference column.
    const auto& [ref_plus, ref_minus] = columns.begin()->second;
    for (const auto& [key, col] : columns) {
        const Amp det = col.first * ref_minus - col.second * ref_plus;
        if (!T::negligible(det, scale)) return false;
    }
    return true;
}

/// True iff a = lambda * b for some |lambda| = 1.
template <Amplitude Amp>
bool equal_up_to_global_phase(const PureState<Amp>& a, const PureState<Amp>& b) {
    using T = AmplitudeTraits<Amp>;
    if (a.n_atoms() != b.n_atoms() || a.size() != b.size()) return false;
    if (a.empty()) return true;
    for (std::size_t idx = 0; idx < a.size(); ++idx) {
        if (a.terms()[idx].first != b.terms()[idx].first) return false;
    }
    const Amp& a_ref = a.terms().front().second;
    const Amp& b_ref = b.terms().front().second;
    if (!T::reals_equal(T::norm_sq(a_ref), T::norm_sq(b_ref))) return false;
    const auto scale = norm_sq(a);
    for (std::size_t idx = 0; idx < a.size(); ++idx) {
        const Amp cross = a.terms()[idx].second * b_ref - b.terms()[idx].second * a_ref;
        if (!T::negligible(cross, scale)) return false;
    }
    return true;
}

/// One line per term, "photon=<mode> spins=<+-> amp=<amplitude>", sorted by
/// label text.
template <Amplitude Amp>
std::string dump_state(const PureState<Amp>& s) {
    std::vector<std::pair<std::string, std::string>> lines;
    lines.reserve(s.size());
    for (const auto& [label, a] : s.terms()) lines.emplace_back(label.to_string(), amplitude_to_string(a));
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& [label, amp] : lines) out += label + " amp=" + amp + "\n";
    return out;
}

}  // namespace ifm
