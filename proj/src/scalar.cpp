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

#include "cveao/scalar.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "cveao/errors.hpp"

namespace cveao {

namespace {

using boost::multiprecision::mpz_int;

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            return false;
        }
    }
    return true;
}

[[noreturn]] void bad_literal(std::string_view text) {
    throw InputError("malformed number '" + std::string(text) + "'");
}

// Leading zeros would otherwise select an octal or hex parse.
mpz_int decimal_int(std::string_view digits) {
    std::size_t first = digits.find_first_not_of('0');
    return first == std::string_view::npos ? mpz_int(0) : mpz_int(std::string(digits.substr(first)));
}

mpz_int pow10(long e) {
    mpz_int r = 1;
    for (long i = 0; i < e; ++i) {
        r *= 10;
    }
    return r;
}

Rational parse_decimal_exact(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
        std::string_view exp_text = s.substr(epos + 1);
        s = s.substr(0, epos);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 6) {
            bad_literal(text);
        }
        exponent = std::stol(std::string(exp_text));
        if (exp_negative) {
            exponent = -exponent;
        }
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac))) {
            bad_literal(text);
        }
        digits = std::string(whole) + std::string(frac);
        exponent -= static_cast<long>(frac.size());
    } else {
        if (!all_digits(s)) {
            bad_literal(text);
        }
        digits = std::string(s);
    }
    mpz_int mantissa = decimal_int(digits);
    if (negative) {
        mantissa = -mantissa;
    }
    if (exponent >= 0) {
        return Rational(mantissa * pow10(exponent));
    }
    return Rational(mantissa, pow10(-exponent));
}

}  // namespace

template <>
Rational parse_scalar<Rational>(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        std::string_view num_digits = num;
        if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+')) {
            num_digits.remove_prefix(1);
        }
        if (!all_digits(num_digits) || !all_digits(den)) {
            bad_literal(text);
        }
        mpz_int d = decimal_int(den);
        if (d == 0) {
            throw InputError("zero denominator in '" + std::string(text) + "'");
        }
        mpz_int n = decimal_int(num_digits);
        if (!num.empty() && num.front() == '-') {
            n = -n;
        }
        return Rational(n, d);
    }
    return parse_decimal_exact(text);
}

template <>
double parse_scalar<double>(std::string_view text) {
    if (text.find('/') != std::string_view::npos) {
        return to_double(parse_scalar<Rational>(text));
    }
    std::string_view s = text;
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        bad_literal(text);
    }
    return value;
}

std::string format_scalar(const Rational &v) { return v.str(); }

std::string format_scalar(double v) {
    if (v == 0.0) {
        return "0";
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace cveao
