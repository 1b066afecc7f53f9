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
 * Exact scalars for interferometer amplitudes and probabilities.
 *
 * Every amplitude that appears in beam-splitter / spin-rotation networks built
 * from 1/sqrt2 splittings and quarter-phase shifts lives in Z[w]/sqrt2^k with
 * w = exp(i pi/4). Probabilities are then of the form (p + q sqrt2)/2^m, and
 * conditional probabilities are elements of Q(sqrt2).
 */

#pragma once

#include <array>
#include <compare>
#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>

#include "ifm/checked_int.hpp"

namespace ifm {

/// Floating-point mirror of CycloAmp.
using FloatAmp = std::complex<double>;

/// Sign of a + b*sqrt2, decided exactly.
int sign_of_quadratic(Int a, Int b);

/// Exact real (p + q*sqrt2) / 2^m in canonical form: m == 0 or p, q not both
/// even. Zero is (0, 0, 0).
class QuadReal {
   public:
    QuadReal() = default;
    QuadReal(Int p, Int q, int m);
    explicit QuadReal(Int integer) : QuadReal(integer, 0, 0) {}

    Int rational_part() const { return p_; }
    Int sqrt2_part() const { return q_; }
    int exponent() const { return m_; }

    bool is_zero() const { return p_ == 0 && q_ == 0; }
    int sign() const { return sign_of_quadratic(p_, q_); }
    double to_double() const;

    QuadReal& operator+=(const QuadReal& other);
    QuadReal& operator-=(const QuadReal& other);
    QuadReal& operator*=(const QuadReal& other);

    friend QuadReal operator+(QuadReal a, const QuadReal& b) { return a += b; }
    friend QuadReal operator-(QuadReal a, const QuadReal& b) { return a -= b; }
    friend QuadReal operator*(QuadReal a, const QuadReal& b) { return a *= b; }
    friend QuadReal operator-(const QuadReal& a);

    friend bool operator==(const QuadReal&, const QuadReal&) = default;
    friend std::strong_ordering operator<=>(const QuadReal& a, const QuadReal& b);

    /// "(p+q*sqrt2)/2^m", e.g. "(9+0*sqrt2)/2^4".
    std::string to_string() const;
    /// Accepts to_string() output and the short forms "p", "p/2^m".
    static QuadReal parse(std::string_view text);

   private:
    Int p_ = 0;
    Int q_ = 0;
    int m_ = 0;
};

/// Exact element (a + b*sqrt2) / c of Q(sqrt2), c > 0, gcd(a, b, c) == 1.
/// Used for conditional probabilities, which are ratios of QuadReal values.
class QuadRational {
   public:
    QuadRational() = default;
    QuadRational(Int a, Int b, Int c);
    explicit QuadRational(Int integer) : QuadRational(integer, 0, 1) {}
    explicit QuadRational(const QuadReal& x);

    static QuadRational fraction(Int num, Int den) { return {num, 0, den}; }

    Int rational_numerator() const { return a_; }
    Int sqrt2_numerator() const { return b_; }
    Int denominator() const { return c_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }
    int sign() const { return sign_of_quadratic(a_, b_); }
    double to_double() const;

    friend QuadRational operator+(const QuadRational& x, const QuadRational& y);
    friend QuadRational operator-(const QuadRational& x, const QuadRational& y);
    friend QuadRational operator*(const QuadRational& x, const QuadRational& y);
    /// Throws std::domain_error on division by zero.
    friend QuadRational operator/(const QuadRational& x, const QuadRational& y);
    friend QuadRational operator-(const QuadRational& x);

    friend bool operator==(const QuadRational&, const QuadRational&) = default;
    friend std::strong_ordering operator<=>(const QuadRational& x, const QuadRational& y);

    /// "a/c" when rational ("1/16", "1", "0"), otherwise "(a+b*sqrt2)/c".
    std::string to_string() const;
    static QuadRational parse(std::string_view text);

   private:
    Int a_ = 0;
    Int b_ = 0;
    Int c_ = 1;
};

/// x / y for QuadReal operands, exactly.
QuadRational ratio(const QuadReal& x, const QuadReal& y);

/// Exact amplitude (c0 + c1 w + c2 w^2 + c3 w^3) / sqrt2^k, w = exp(i pi/4).
///
/// Canonical form: k == 0, or the numerator is not divisible by sqrt2 in Z[w].
/// Zero is (0, 0, 0, 0; k = 0). Structural equality is value equality.
class CycloAmp {
   public:
    using Coeffs = std::array<Int, 4>;

    CycloAmp() = default;
    explicit CycloAmp(Int integer) : c_{integer, 0, 0, 0} {}
    CycloAmp(const Coeffs& numerator, int sqrt2_exponent);

    static CycloAmp i() { return CycloAmp({0, 0, 1, 0}, 0); }
    static CycloAmp zeta() { return CycloAmp({0, 1, 0, 0}, 0); }
    static CycloAmp sqrt2() { return CycloAmp({0, 1, 0, -1}, 0); }
    static CycloAmp inv_sqrt2() { return CycloAmp({1, 0, 0, 0}, 1); }

    const Coeffs& numerator() const { return c_; }
    int sqrt2_exponent() const { return k_; }
    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

    /// this / sqrt2^times.
    CycloAmp divided_by_sqrt2(int times = 1) const;

    CycloAmp& operator+=(const CycloAmp& other);
    CycloAmp& operator-=(const CycloAmp& other);
    CycloAmp& operator*=(const CycloAmp& other);

    friend CycloAmp operator+(CycloAmp a, const CycloAmp& b) { return a += b; }
    friend CycloAmp operator-(CycloAmp a, const CycloAmp& b) { return a -= b; }
    friend CycloAmp operator*(CycloAmp a, const CycloAmp& b) { return a *= b; }
    friend CycloAmp operator-(const CycloAmp& a);

    friend bool operator==(const CycloAmp&, const CycloAmp&) = default;

    /// Human form: "(-1+2i)/sqrt2^3", "i/sqrt2", "(1+w^3)/sqrt2", "0".
    /// Numerator units are 1, i, w, w^3.
    std::string to_string() const;
    static CycloAmp parse(std::string_view text);

   private:
    Coeffs c_{0, 0, 0, 0};
    int k_ = 0;
};

/// Complex conjugate: w -> -w^3, i.e. (c0, c1, c2, c3) -> (c0, -c3, -c2, -c1).
CycloAmp conj(const CycloAmp& x);
/// |x|^2 as an exact real.
QuadReal norm_sq(const CycloAmp& x);
FloatAmp approx(const CycloAmp& x);

std::ostream& operator<<(std::ostream& os, const CycloAmp& x);
std::ostream& operator<<(std::ostream& os, const QuadReal& x);
std::ostream& operator<<(std::ostream& os, const QuadRational& x);

}  // namespace ifm
