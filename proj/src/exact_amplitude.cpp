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

#include "ifm/exact_amplitude.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace ifm {

// ---------------------------------------------------------------------------
// Int helpers

std::string to_string(Int value) {
    if (value == 0) return "0";
    const bool negative = value < 0;
    std::string digits;
    // Work on the negative side so INT128_MIN does not overflow.
    Int v = negative ? value : -value;
    while (v != 0) {
        const int d = static_cast<int>(-(v % 10));
        digits.push_back(static_cast<char>('0' + d));
        v /= 10;
    }
    if (negative) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

Int parse_int(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty integer");
    bool negative = false;
    std::size_t pos = 0;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        pos = 1;
    }
    if (pos == text.size()) throw std::invalid_argument("integer has no digits");
    Int v = 0;
    for (; pos < text.size(); ++pos) {
        const char ch = text[pos];
        if (ch < '0' || ch > '9') throw std::invalid_argument("invalid integer: " + std::string(text));
        v = checked::sub(checked::mul(v, 10), ch - '0');
    }
    return negative ? v : checked::neg(v);
}

// ---------------------------------------------------------------------------
// Q(sqrt2) helpers

int sign_of_quadratic(Int a, Int b) {
    const int sa = (a > 0) - (a < 0);
    const int sb = (b > 0) - (b < 0);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // Mixed signs: the larger of |a| and |b|*sqrt2 wins; they are never equal.
    const Int a2 = checked::mul(a, a);
    const Int b2 = checked::mul(2, checked::mul(b, b));
    return a2 > b2 ? sa : sb;
}

namespace {

long double quadratic_value(Int a, Int b) {
    static const long double kSqrt2 = std::sqrt(2.0L);
    return static_cast<long double>(a) + static_cast<long double>(b) * kSqrt2;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string strip_spaces(std::string_view s) {
    std::string out;
    for (char ch : s) {
        if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
    }
    return out;
}

// Parses "(A+B*sqrt2)" or "(A-B*sqrt2)" (parentheses included) into A, B.
std::pair<Int, Int> parse_quadratic_numerator(std::string_view s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
        throw std::invalid_argument("expected parenthesized (a+b*sqrt2)");
    }
    s = s.substr(1, s.size() - 2);
    constexpr std::string_view kSuffix = "*sqrt2";
    if (s.size() <= kSuffix.size() || s.substr(s.size() - kSuffix.size()) != kSuffix) {
        throw std::invalid_argument("expected *sqrt2 term");
    }
    s.remove_suffix(kSuffix.size());
    // The separator is the last '+' or '-' that is not at position 0 and not
    // directly after another sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '+' && s[i - 1] != '-') {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos) throw std::invalid_argument("expected a+b*sqrt2");
    const Int a = parse_int(s.substr(0, split));
    std::string_view b_text = s.substr(split);
    if (b_text.size() > 1 && b_text[0] == '+') b_text.remove_prefix(1);
    return {a, parse_int(b_text)};
}

}  // namespace

// ---------------------------------------------------------------------------
// QuadReal

QuadReal::QuadReal(Int p, Int q, int m) : p_(p), q_(q), m_(m) {
    if (m_ < 0) {
        const Int scale = checked::pow2(-m_);
        p_ = checked::mul(p_, scale);
        q_ = checked::mul(q_, scale);
        m_ = 0;
    }
    if (p_ == 0 && q_ == 0) {
        m_ = 0;
        return;
    }
    while (m_ > 0 && p_ % 2 == 0 && q_ % 2 == 0) {
        p_ /= 2;
        q_ /= 2;
        --m_;
    }
}

double QuadReal::to_double() const {
    return static_cast<double>(std::ldexp(quadratic_value(p_, q_), -m_));
}

QuadReal& QuadReal::operator+=(const QuadReal& other) {
    const int m = std::max(m_, other.m_);
    const Int sa = checked::pow2(m - m_);
    const Int sb = checked::pow2(m - other.m_);
    *this = QuadReal(checked::add(checked::mul(p_, sa), checked::mul(other.p_, sb)),
                     checked::add(checked::mul(q_, sa), checked::mul(other.q_, sb)), m);
    return *this;
}

QuadReal& QuadReal::operator-=(const QuadReal& other) { return *this += -other; }

QuadReal& QuadReal::operator*=(const QuadReal& other) {
    const Int p = checked::add(checked::mul(p_, other.p_), checked::mul(2, checked::mul(q_, other.q_)));
    const Int q = checked::add(checked::mul(p_, other.q_), checked::mul(q_, other.p_));
    *this = QuadReal(p, q, m_ + other.m_);
    return *this;
}

QuadReal operator-(const QuadReal& a) { return QuadReal(checked::neg(a.p_), checked::neg(a.q_), a.m_); }

std::strong_ordering operator<=>(const QuadReal& a, const QuadReal& b) {
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string QuadReal::to_string() const {
    std::string out = "(" + ifm::to_string(p_);
    out += q_ < 0 ? "-" : "+";
    out += ifm::to_string(abs(q_)) + "*sqrt2)/2^" + std::to_string(m_);
    return out;
}

QuadReal QuadReal::parse(std::string_view text) {
    const std::string s = strip_spaces(text);
    if (s.empty()) throw std::invalid_argument("empty QuadReal");
    std::string_view body = s;
    int m = 0;
    const auto slash = body.rfind("/2^");
    if (slash != std::string_view::npos) {
        m = static_cast<int>(parse_int(body.substr(slash + 3)));
        body = body.substr(0, slash);
    }
    if (!body.empty() && body.front() == '(') {
        const auto [p, q] = parse_quadratic_numerator(body);
        return QuadReal(p, q, m);
    }
    return QuadReal(parse_int(body), 0, m);
}

// ---------------------------------------------------------------------------
// QuadRational

QuadRational::QuadRational(Int a, Int b, Int c) : a_(a), b_(b), c_(c) {
    if (c_ == 0) throw std::domain_error("QuadRational with zero denominator");
    if (c_ < 0) {
        a_ = checked::neg(a_);
        b_ = checked::neg(b_);
        c_ = checked::neg(c_);
    }
    if (a_ == 0 && b_ == 0) {
        c_ = 1;
        return;
    }
    const Int g = gcd(gcd(a_, b_), c_);
    a_ /= g;
    b_ /= g;
    c_ /= g;
}

QuadRational::QuadRational(const QuadReal& x)
    : QuadRational(x.rational_part(), x.sqrt2_part(), checked::pow2(x.exponent())) {}

double QuadRational::to_double() const {
    return static_cast<double>(quadratic_value(a_, b_) / static_cast<long double>(c_));
}

QuadRational operator+(const QuadRational& x, const QuadRational& y) {
    const Int g = gcd(x.c_, y.c_);
    const Int sx = y.c_ / g;
    const Int sy = x.c_ / g;
    return {checked::add(checked::mul(x.a_, sx), checked::mul(y.a_, sy)),
            checked::add(checked::mul(x.b_, sx), checked::mul(y.b_, sy)), checked::mul(x.c_, sx)};
}

QuadRational operator-(const QuadRational& x) { return {checked::neg(x.a_), checked::neg(x.b_), x.c_}; }

QuadRational operator-(const QuadRational& x, const QuadRational& y) { return x + (-y); }

QuadRational operator*(const QuadRational& x, const QuadRational& y) {
    const Int a = checked::add(checked::mul(x.a_, y.a_), checked::mul(2, checked::mul(x.b_, y.b_)));
    const Int b = checked::add(checked::mul(x.a_, y.b_), checked::mul(x.b_, y.a_));
    return {a, b, checked::mul(x.c_, y.c_)};
}

QuadRational operator/(const QuadRational& x, const QuadRational& y) {
    if (y.is_zero()) throw std::domain_error("QuadRational division by zero");
    // 1/(d + e sqrt2) = (d - e sqrt2) / (d^2 - 2 e^2)
    const Int d = y.a_;
    const Int e = y.b_;
    const Int norm = checked::sub(checked::mul(d, d), checked::mul(2, checked::mul(e, e)));
    const QuadRational conj_y(d, checked::neg(e), 1);
    const QuadRational numerator = x * conj_y;
    return {checked::mul(numerator.a_, y.c_), checked::mul(numerator.b_, y.c_), checked::mul(numerator.c_, norm)};
}

std::strong_ordering operator<=>(const QuadRational& x, const QuadRational& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string QuadRational::to_string() const {
    if (b_ == 0) {
        if (c_ == 1) return ifm::to_string(a_);
        return ifm::to_string(a_) + "/" + ifm::to_string(c_);
    }
    std::string out = "(" + ifm::to_string(a_);
    out += b_ < 0 ? "-" : "+";
    out += ifm::to_string(abs(b_)) + "*sqrt2)/" + ifm::to_string(c_);
    return out;
}

QuadRational QuadRational::parse(std::string_view text) {
    const std::string s = strip_spaces(text);
    if (s.empty()) throw std::invalid_argument("empty QuadRational");
    std::string_view body = s;
    Int c = 1;
    const auto slash = body.rfind('/');
    if (slash != std::string_view::npos) {
        c = parse_int(body.substr(slash + 1));
        body = body.substr(0, slash);
    }
    if (!body.empty() && body.front() == '(') {
        const auto [a, b] = parse_quadratic_numerator(body);
        return {a, b, c};
    }
    return {parse_int(body), 0, c};
}

QuadRational ratio(const QuadReal& x, const QuadReal& y) { return QuadRational(x) / QuadRational(y); }

// ---------------------------------------------------------------------------
// CycloAmp

namespace {

using Coeffs = CycloAmp::Coeffs;

// numerator * sqrt2, using sqrt2 = w - w^3.
Coeffs times_sqrt2(const Coeffs& a) {
    return {checked::sub(a[1], a[3]), checked::add(a[0], a[2]), checked::add(a[1], a[3]),
            checked::sub(a[2], a[0])};
}

// Polynomial product modulo w^4 + 1.
Coeffs times(const Coeffs& a, const Coeffs& b) {
    Coeffs r{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < 4; ++j) {
            const Int t = checked::mul(a[i], b[j]);
            const int n = i + j;
            if (n < 4) {
                r[n] = checked::add(r[n], t);
            } else {
                r[n - 4] = checked::sub(r[n - 4], t);
            }
        }
    }
    return r;
}

Coeffs scaled_up(Coeffs a, int sqrt2_power) {
    for (; sqrt2_power >= 2; sqrt2_power -= 2) {
        for (auto& c : a) c = checked::mul(c, 2);
    }
    if (sqrt2_power == 1) a = times_sqrt2(a);
    return a;
}

}  // namespace

CycloAmp::CycloAmp(const Coeffs& numerator, int sqrt2_exponent) : c_(numerator), k_(sqrt2_exponent) {
    if (k_ < 0) {
        c_ = scaled_up(c_, -k_);
        k_ = 0;
    }
    if (is_zero()) {
        k_ = 0;
        return;
    }
    while (k_ > 0) {
        const Coeffs t = times_sqrt2(c_);
        if (std::any_of(t.begin(), t.end(), [](Int v) { return v % 2 != 0; })) break;
        for (int n = 0; n < 4; ++n) c_[n] = t[n] / 2;
        --k_;
    }
}

CycloAmp CycloAmp::divided_by_sqrt2(int times) const { return CycloAmp(c_, k_ + times); }

CycloAmp& CycloAmp::operator+=(const CycloAmp& other) {
    const int k = std::max(k_, other.k_);
    const Coeffs a = scaled_up(c_, k - k_);
    const Coeffs b = scaled_up(other.c_, k - other.k_);
    Coeffs sum;
    for (int n = 0; n < 4; ++n) sum[n] = checked::add(a[n], b[n]);
    *this = CycloAmp(sum, k);
    return *this;
}

CycloAmp& CycloAmp::operator-=(const CycloAmp& other) { return *this += -other; }

CycloAmp& CycloAmp::operator*=(const CycloAmp& other) {
    *this = CycloAmp(times(c_, other.c_), k_ + other.k_);
    return *this;
}

CycloAmp operator-(const CycloAmp& a) {
    CycloAmp r = a;
    for (auto& c : r.c_) c = checked::neg(c);
    return r;
}

CycloAmp conj(const CycloAmp& x) {
    const auto& c = x.numerator();
    return CycloAmp({c[0], checked::neg(c[3]), checked::neg(c[2]), checked::neg(c[1])}, x.sqrt2_exponent());
}

QuadReal norm_sq(const CycloAmp& x) {
    const auto& c = x.numerator();
    const Coeffs conj_c{c[0], checked::neg(c[3]), checked::neg(c[2]), checked::neg(c[1])};
    const Coeffs r = times(c, conj_c);
    // A real element of Z[w] has the form r0 + r1 (w - w^3) = r0 + r1 sqrt2.
    if (r[2] != 0 || r[1] != checked::neg(r[3])) throw std::logic_error("norm_sq produced a non-real value");
    return QuadReal(r[0], r[1], x.sqrt2_exponent());
}

FloatAmp approx(const CycloAmp& x) {
    static const long double kInvSqrt2 = 1.0L / std::sqrt(2.0L);
    const auto& c = x.numerator();
    const auto l = [](Int v) { return static_cast<long double>(v); };
    // w = (1 + i)/sqrt2, w^3 = (-1 + i)/sqrt2.
    long double re = l(c[0]) + (l(c[1]) - l(c[3])) * kInvSqrt2;
    long double im = l(c[2]) + (l(c[1]) + l(c[3])) * kInvSqrt2;
    const int k = x.sqrt2_exponent();
    re = std::ldexp(re, -(k / 2));
    im = std::ldexp(im, -(k / 2));
    if (k % 2 != 0) {
        re *= kInvSqrt2;
        im *= kInvSqrt2;
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

std::string CycloAmp::to_string() const {
    struct Term {
        Int coeff;
        const char* unit;
    };
    const Term terms[] = {{c_[0], ""}, {c_[2], "i"}, {c_[1], "w"}, {c_[3], "w^3"}};
    std::string numer;
    int count = 0;
    for (const auto& [coeff, unit] : terms) {
        if (coeff == 0) continue;
        std::string t;
        if (*unit == '\0') {
            t = ifm::to_string(coeff);
        } else if (coeff == 1) {
            t = unit;
        } else if (coeff == -1) {
            t = std::string("-") + unit;
        } else {
            t = ifm::to_string(coeff) + unit;
        }
        if (count > 0 && t.front() != '-') numer += '+';
        numer += t;
        ++count;
    }
    if (count == 0) return "0";
    if (k_ == 0) return numer;
    if (count > 1) numer = "(" + numer + ")";
    return numer + (k_ == 1 ? "/sqrt2" : "/sqrt2^" + std::to_string(k_));
}

CycloAmp CycloAmp::parse(std::string_view text) {
    const std::string s = strip_spaces(trim(text));
    if (s.empty()) throw std::invalid_argument("empty amplitude");
    std::string_view body = s;
    int k = 0;
    const auto den = body.rfind("/sqrt2");
    if (den != std::string_view::npos) {
        std::string_view tail = body.substr(den + 6);
        if (tail.empty()) {
            k = 1;
        } else if (tail.front() == '^') {
            k = static_cast<int>(parse_int(tail.substr(1)));
        } else {
            throw std::invalid_argument("malformed sqrt2 denominator in '" + s + "'");
        }
        body = body.substr(0, den);
    }
    if (!body.empty() && body.front() == '(') {
        if (body.back() != ')') throw std::invalid_argument("unbalanced parentheses in '" + s + "'");
        body = body.substr(1, body.size() - 2);
    }
    if (body.empty()) throw std::invalid_argument("empty numerator in '" + s + "'");

    Coeffs c{0, 0, 0, 0};
    std::size_t pos = 0;
    bool first = true;
    while (pos < body.size()) {
        bool negative = false;
        if (body[pos] == '+' || body[pos] == '-') {
            negative = body[pos] == '-';
            ++pos;
        } else if (!first) {
            throw std::invalid_argument("expected '+' or '-' in '" + s + "'");
        }
        const std::size_t digits_begin = pos;
        while (pos < body.size() && std::isdigit(static_cast<unsigned char>(body[pos]))) ++pos;
        const bool has_digits = pos > digits_begin;
        Int coeff = has_digits ? parse_int(body.substr(digits_begin, pos - digits_begin)) : 1;
        if (negative) coeff = checked::neg(coeff);
        int slot = 0;
        if (pos < body.size() && body[pos] == 'i') {
            slot = 2;
            ++pos;
        } else if (pos < body.size() && body[pos] == 'w') {
            ++pos;
            slot = 1;
            if (body.substr(pos, 2) == "^3") {
                slot = 3;
                pos += 2;
            }
        } else if (!has_digits) {
            throw std::invalid_argument("expected a term in '" + s + "'");
        }
        c[slot] = checked::add(c[slot], coeff);
        first = false;
    }
    return CycloAmp(c, k);
}

std::ostream& operator<<(std::ostream& os, const CycloAmp& x) { return os << x.to_string(); }
std::ostream& operator<<(std::ostream& os, const QuadReal& x) { return os << x.to_string(); }
std::ostream& operator<<(std::ostream& os, const QuadRational& x) { return os << x.to_string(); }

}  // namespace ifm
