// Copyright 2026 The cveao Authors
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

#include <boost/multiprecision/gmp.hpp>
#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

namespace cveao {

/// Exact rational arithmetic. Expression templates are disabled so that `auto`
/// and generic code see a plain value type.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// The two-mode number tower: exact rationals for code construction and
/// validation, binary floating point for simulation and decomposition.
template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

template <Scalar T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

/// Default float tolerance. Ignored in rational mode.
inline constexpr double kDefaultTol = 1e-9;

/// Zero test: exact for rationals, |v| <= tol for doubles.
template <Scalar T>
bool is_zero(const T &v, double tol) {
    if constexpr (is_exact_v<T>) {
        (void)tol;
        return v == 0;
    } else {
        return std::abs(v) <= tol;
    }
}

template <Scalar T>
T abs_value(const T &v) {
    if constexpr (is_exact_v<T>) {
        return v < 0 ? T(-v) : v;
    } else {
        return std::abs(v);
    }
}

inline double to_double(const Rational &v) { return v.convert_to<double>(); }
inline double to_double(double v) { return v; }

/// Converts between tower levels. double -> Rational is exact (binary value).
template <Scalar To, Scalar From>
To scalar_cast(const From &v) {
    if constexpr (std::same_as<To, From>) {
        return v;
    } else if constexpr (is_exact_v<To>) {
        return Rational(v);
    } else {
        return to_double(v);
    }
}

/// Parses "p/q", integers, and decimal literals (with optional exponent).
/// Decimal literals are converted exactly in rational mode ("0.1" == 1/10).
/// Throws InputError on malformed text.
template <Scalar T>
T parse_scalar(std::string_view text);

/// Rationals print as "p/q" or "p"; doubles print shortest round-trip form.
std::string format_scalar(const Rational &v);
std::string format_scalar(double v);

}  // namespace cveao
