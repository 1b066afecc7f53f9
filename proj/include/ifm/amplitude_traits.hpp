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
 * Backend traits. The engine is templated on the amplitude scalar; these
 * traits supply the matching real / ratio types and the zero tests.
 */

#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string_view>

#include "ifm/exact_amplitude.hpp"

namespace Eigen {

template <>
struct NumTraits<ifm::CycloAmp> : GenericNumTraits<ifm::CycloAmp> {
    using Real = ifm::CycloAmp;
    using NonInteger = ifm::CycloAmp;
    using Literal = ifm::CycloAmp;
    using Nested = ifm::CycloAmp;
    enum {
        IsComplex = 1,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 5,
        AddCost = 20,
        MulCost = 40
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

// The exact scalar is its own "real" type, which makes Eigen's mixed
// complex/real specializations ambiguous; pin the homogeneous case.
template <class BinaryOp>
struct ScalarBinaryOpTraits<ifm::CycloAmp, ifm::CycloAmp, BinaryOp> {
    using ReturnType = ifm::CycloAmp;
};

}  // namespace Eigen

namespace ifm {

enum class Backend { Exact, Float };

constexpr std::string_view backend_name(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

template <class Amp>
struct AmplitudeTraits;

template <>
struct AmplitudeTraits<CycloAmp> {
    using Real = QuadReal;
    using Ratio = QuadRational;
    static constexpr Backend backend = Backend::Exact;

    static CycloAmp from_exact(const CycloAmp& x) { return x; }
    static bool is_zero(const CycloAmp& x) { return x.is_zero(); }
    static Real norm_sq(const CycloAmp& x) { return ifm::norm_sq(x); }
    static bool real_is_zero(const Real& r) { return r.is_zero(); }
    static bool reals_equal(const Real& a, const Real& b) { return a == b; }
    /// Zero test for a determinant-like quantity relative to a scale.
    static bool negligible(const CycloAmp& x, const Real&) { return x.is_zero(); }
    static Ratio ratio(const Real& num, const Real& den) { return ifm::ratio(num, den); }
    static double to_double(const Ratio& r) { return r.to_double(); }
    static std::optional<QuadRational> exact(const Ratio& r) { return r; }
};

template <>
struct AmplitudeTraits<FloatAmp> {
    using Real = double;
    using Ratio = double;
    static constexpr Backend backend = Backend::Float;

    /// Amplitudes below this magnitude are treated as exact cancellations.
    static constexpr double kZeroAmplitude = 1e-14;
    static constexpr double kRelativeTolerance = 1e-10;

    static FloatAmp from_exact(const CycloAmp& x) { return approx(x); }
    static bool is_zero(const FloatAmp& x) { return std::abs(x) <= kZeroAmplitude; }
    static Real norm_sq(const FloatAmp& x) { return std::norm(x); }
    static bool real_is_zero(Real r) { return std::abs(r) <= kZeroAmplitude * kZeroAmplitude; }
    static bool reals_equal(Real a, Real b) {
        return std::abs(a - b) <= kRelativeTolerance * std::max({1.0, std::abs(a), std::abs(b)});
    }
    static bool negligible(const FloatAmp& x, Real scale) { return std::abs(x) <= kRelativeTolerance * scale; }
    static Ratio ratio(Real num, Real den) { return num / den; }
    static double to_double(Ratio r) { return r; }
    static std::optional<QuadRational> exact(Ratio) { return std::nullopt; }
};

template <class Amp>
using RealOf = typename AmplitudeTraits<Amp>::Real;
template <class Amp>
using RatioOf = typename AmplitudeTraits<Amp>::Ratio;

template <class Amp>
concept Amplitude = requires { AmplitudeTraits<Amp>::backend; };

}  // namespace ifm
