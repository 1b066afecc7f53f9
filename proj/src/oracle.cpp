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

#include "ifm/oracle.hpp"

#include <bit>
#include <stdexcept>

namespace ifm::oracle {

namespace {

struct Gauss {
    Int re = 0;
    Int im = 0;
};

Gauss i_power(unsigned k) {
    switch (k % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

Gauss times_i(Gauss g) { return {checked::neg(g.im), g.re}; }

Gauss plus(Gauss a, Gauss b) { return {checked::add(a.re, b.re), checked::add(a.im, b.im)}; }

Gauss times(Gauss a, Gauss b) {
    return {checked::sub(checked::mul(a.re, b.re), checked::mul(a.im, b.im)),
            checked::add(checked::mul(a.re, b.im), checked::mul(a.im, b.re))};
}

Int modulus_sq(Gauss g) { return checked::add(checked::mul(g.re, g.re), checked::mul(g.im, g.im)); }

/// Where a history ends. `Stop` is absorption by the first Z+ atom, or the
/// obstacle when every atom is Z-; which one is fixed by the spin mask.
enum class End { C, D, Stop };

void check_size(std::size_t n) {
    if (n > kMaxAtoms) throw std::invalid_argument("path enumeration supports at most 20 atoms");
}

/// Calls emit(end, z_mask, arm, numerator, sqrt2 exponent) once per history.
template <class Emit>
void enumerate(std::size_t n, bool obstacle, Emit&& emit) {
    check_size(n);
    const int e = static_cast<int>(n);
    for (std::uint32_t z = 0; z < (std::uint32_t{1} << n); ++z) {
        // Each atom contributes i/sqrt2 (Z+) or 1/sqrt2 (Z-).
        const Gauss atoms = i_power(static_cast<unsigned>(std::popcount(z)));

        // Arm u: i/sqrt2, then u -> c/sqrt2 and u -> i d/sqrt2.
        const Gauss u = times_i(atoms);
        emit(End::C, z, "u", u, e + 2);
        emit(End::D, z, "u", times_i(u), e + 2);

        // Arm v: 1/sqrt2. Absorbed by the first Z+ atom it meets.
        const Gauss v = atoms;
        if (z != 0 || obstacle) {
            emit(End::Stop, z, "v", v, e + 1);
        } else {
            // v -> d/sqrt2 and v -> i c/sqrt2.
            emit(End::D, z, "v", v, e + 2);
            emit(End::C, z, "v", times_i(v), e + 2);
        }
    }
}

std::string stop_name(std::uint32_t z) {
    if (z == 0) return "blocked";
    return "absorbed(" + std::to_string(std::countr_zero(z) + 1) + ")";
}

/// Summed numerators per final label; c and d carry sqrt2^(n+2), Stop carries
/// sqrt2^(n+1).
struct Table {
    std::size_t n = 0;
    bool obstacle = false;
    std::vector<Gauss> c, d, stop;

    int exponent(End end) const { return static_cast<int>(n) + (end == End::Stop ? 1 : 2); }
};

Table tabulate(std::size_t n, bool obstacle) {
    check_size(n);
    Table t{n, obstacle, {}, {}, {}};
    const std::size_t size = std::size_t{1} << n;
    t.c.resize(size);
    t.d.resize(size);
    t.stop.resize(size);
    enumerate(n, obstacle, [&](End end, std::uint32_t z, const char*, Gauss g, int e) {
        if (e != t.exponent(end)) throw std::logic_error("inconsistent path denominators");
        auto& slot = end == End::C ? t.c[z] : end == End::D ? t.d[z] : t.stop[z];
        slot = plus(slot, g);
    });
    return t;
}

Int weight(const std::vector<Gauss>& amps) {
    Int total = 0;
    for (const auto& g : amps) total = checked::add(total, modulus_sq(g));
    return total;
}

/// g(x) = sum_z f(z) prod_j <x_j|z_j>, with <same|same> = -i/sqrt2 and
/// <other|same> = 1/sqrt2; the exponent grows by n.
std::vector<Gauss> to_x_readout(const std::vector<Gauss>& f, std::size_t n) {
    std::vector<Gauss> g(f.size());
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        Gauss sum;
        for (std::uint32_t z = 0; z < f.size(); ++z) {
            if (f[z].re == 0 && f[z].im == 0) continue;
            const unsigned agree = static_cast<unsigned>(n) - static_cast<unsigned>(std::popcount(x ^ z));
            // (-i)^agree = i^(3 * agree)
            sum = plus(sum, times(f[z], i_power(3 * agree)));
        }
        g[x] = sum;
    }
    return g;
}

Probability dyadic(Int num, int sqrt2_exponent_of_amplitude) {
    return Probability::of(QuadRational::fraction(num, checked::pow2(sqrt2_exponent_of_amplitude)));
}

End parse_end(const std::string& photon, std::uint32_t z_mask) {
    if (photon == "c") return End::C;
    if (photon == "d") return End::D;
    if (photon == stop_name(z_mask)) return End::Stop;
    return End::Stop;  // caller filters on the name; an impossible label has no paths
}

std::string tag(char basis, std::size_t atom, std::size_t n, char sign) {
    std::string out(1, basis);
    if (n > 1) out += std::to_string(atom);
    return out + sign;
}

}  // namespace

std::vector<PathContribution> paths_to(std::size_t n, bool obstacle, const std::string& photon, std::uint32_t z_mask) {
    std::vector<PathContribution> out;
    const End want = parse_end(photon, z_mask);
    const bool stop_label = want == End::Stop;
    if (stop_label && photon != stop_name(z_mask)) return out;
    enumerate(n, obstacle, [&](End end, std::uint32_t z, const char* arm, Gauss g, int e) {
        if (z == z_mask && end == want) out.push_back({arm, {g.re, g.im, e}});
    });
    return out;
}

GaussianAmp amplitude_of(std::size_t n, bool obstacle, const std::string& photon, std::uint32_t z_mask) {
    GaussianAmp total;
    for (const auto& p : paths_to(n, obstacle, photon, z_mask)) {
        total.re = checked::add(total.re, p.amplitude.re);
        total.im = checked::add(total.im, p.amplitude.im);
        total.exponent = p.amplitude.exponent;
    }
    return total;
}

ScenarioResult brute_force_oracle(std::size_t n, bool obstacle, SpinBasis basis) {
    if (basis == SpinBasis::X && n > kMaxAtomsXReadout) {
        throw std::invalid_argument("X readout in the path oracle supports at most 10 atoms");
    }
    const Table z_table = tabulate(n, obstacle);
    Table t = z_table;
    int extra = 0;
    if (basis == SpinBasis::X) {
        t.c = to_x_readout(t.c, n);
        t.d = to_x_readout(t.d, n);
        extra = static_cast<int>(n);
    }

    ScenarioResult r;
    r.scenario = std::string("oracle row n=") + std::to_string(n) + (obstacle ? " blocked" : "");
    r.backend = Backend::Exact;
    r.n_atoms = n;
    r.bases.assign(n, basis);
    const int ecd = t.exponent(End::C) + extra;
    const int estop = t.exponent(End::Stop) + extra;

    // Stopped histories, grouped by photon label (the absorbing atom, or the
    // obstacle) so each label's spin amplitudes are read out separately.
    std::vector<std::pair<std::string, std::vector<Gauss>>> stops;
    for (std::size_t j = 0; j <= n; ++j) {
        std::vector<Gauss> part(z_table.stop.size());
        bool any = false;
        for (std::uint32_t z = 0; z < part.size(); ++z) {
            const std::size_t absorber = z == 0 ? 0 : static_cast<std::size_t>(std::countr_zero(z)) + 1;
            if (absorber == j && modulus_sq(z_table.stop[z]) != 0) {
                part[z] = z_table.stop[z];
                any = true;
            }
        }
        if (!any) continue;
        if (basis == SpinBasis::X) part = to_x_readout(part, n);
        stops.emplace_back(j == 0 ? "blocked" : "absorbed(" + std::to_string(j) + ")", std::move(part));
    }
    for (const auto& [name, amps] : stops) {
        for (std::uint32_t x = 0; x < amps.size(); ++x) {
            if (const Int w = modulus_sq(amps[x]); w != 0) {
                r.joint.push_back({name, readout_string(SpinConfig(n, x), r.bases), dyadic(w, estop)});
            }
        }
    }
    for (std::uint32_t x = 0; x < t.c.size(); ++x) {
        const SpinConfig spins(n, x);
        if (const Int w = modulus_sq(t.c[x]); w != 0) r.joint.push_back({"c", readout_string(spins, r.bases), dyadic(w, ecd)});
        if (const Int w = modulus_sq(t.d[x]); w != 0) r.joint.push_back({"d", readout_string(spins, r.bases), dyadic(w, ecd)});
    }

    // Conditionals. Detector weights share the denominator 2^ecd and stop
    // weights share 2^estop, so sums stay integral.
    // Readout rotations are unitary per photon label, so label totals come
    // from the Z table.
    Int absorbed = 0, blocked = 0;
    for (std::uint32_t z = 0; z < z_table.stop.size(); ++z) {
        Int& bucket = z == 0 ? blocked : absorbed;
        bucket = checked::add(bucket, modulus_sq(z_table.stop[z]));
    }
    const int estop_z = z_table.exponent(End::Stop);
    const Int wc = weight(t.c), wd = weight(t.d);
    r.conditionals.push_back({"P(absorbed)", dyadic(absorbed, estop_z)});
    if (obstacle) r.conditionals.push_back({"P(blocked)", dyadic(blocked, estop_z)});
    r.conditionals.push_back({"P(c)", dyadic(wc, ecd)});
    r.conditionals.push_back({"P(d)", dyadic(wd, ecd)});
    if (basis == SpinBasis::Z) {
        r.conditionals.push_back({"P(d AND all Z-)", dyadic(modulus_sq(t.d[0]), ecd)});
        for (std::size_t m = 1; m <= n && wd != 0; ++m) {
            Int plus_weight = 0;
            for (std::uint32_t z = 0; z < t.d.size(); ++z) {
                if ((z >> (m - 1)) & 1u) plus_weight = checked::add(plus_weight, modulus_sq(t.d[z]));
            }
            r.conditionals.push_back({"P(" + tag('Z', m, n, '+') + " | d)", Probability::of(QuadRational::fraction(plus_weight, wd))});
        }
    } else if (wc + wd != 0) {
        const std::uint32_t all = static_cast<std::uint32_t>((std::size_t{1} << n) - 1);
        const Int w_all = checked::add(modulus_sq(t.c[all]), modulus_sq(t.d[all]));
        r.conditionals.push_back({"P(all X+ | c or d)", Probability::of(QuadRational::fraction(w_all, checked::add(wc, wd)))});
    }
    return r;
}

QuadRational right_atom(std::size_t n, std::size_t m) {
    if (m < 1 || m > n) throw std::invalid_argument("selected atom out of range");
    const Table t = tabulate(n, false);
    Int plus_weight = 0;
    for (std::uint32_t z = 0; z < t.d.size(); ++z) {
        if ((z >> (m - 1)) & 1u) plus_weight = checked::add(plus_weight, modulus_sq(t.d[z]));
    }
    return QuadRational::fraction(plus_weight, weight(t.d));
}

}  // namespace ifm::oracle
