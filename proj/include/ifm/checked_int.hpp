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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ifm {

/// Signed 128-bit integer used for every exact coefficient. All arithmetic on
/// it goes through the `checked` helpers, which throw `OverflowError` instead
/// of wrapping.
__extension__ using Int = __int128;

class OverflowError : public std::overflow_error {
   public:
    using std::overflow_error::overflow_error;
};

namespace checked {

inline Int add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("exact arithmetic overflow in addition");
    return r;
}

inline Int sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("exact arithmetic overflow in subtraction");
    return r;
}

inline Int mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("exact arithmetic overflow in multiplication");
    return r;
}

inline Int neg(Int a) { return sub(0, a); }

/// 2^e, checked.
inline Int pow2(int e) {
    if (e < 0 || e > 125) throw OverflowError("power of two out of range");
    return Int{1} << e;
}

}  // namespace checked

inline Int abs(Int a) { return a < 0 ? checked::neg(a) : a; }

inline Int gcd(Int a, Int b) {
    a = abs(a);
    b = abs(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::string to_string(Int value);

/// Parses an optionally signed decimal integer; throws std::invalid_argument on
/// malformed text and OverflowError when it does not fit.
Int parse_int(std::string_view text);

}  // namespace ifm
