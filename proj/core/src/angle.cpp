// Copyright 2026 The ewfnogo Authors
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

#include "ewfnogo/angle.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace ewfnogo {

BlochAngle::BlochAngle(double radians) {
    if (!std::isfinite(radians)) {
        throw std::invalid_argument("BlochAngle: non-finite angle");
    }
    double r = std::fmod(radians, 2 * kPi);
    if (r < 0) {
        r += 2 * kPi;
    }
    if (r >= 2 * kPi) {
        r = 0.0;
    }
    radians_ = r;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_number(std::string_view s, std::string_view whole) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument("malformed angle '" + std::string(whole) + "'");
    }
    return v;
}

}  // namespace

double parse_angle(std::string_view text) {
    const std::string_view whole = text;
    std::string_view s = trim(text);
    if (s.empty()) {
        throw std::invalid_argument("empty angle");
    }
    double sign = 1.0;
    if (s.front() == '-' || s.front() == '+') {
        sign = s.front() == '-' ? -1.0 : 1.0;
        s.remove_prefix(1);
    }
    const auto pi_pos = s.find("pi");
    if (pi_pos == std::string_view::npos) {
        if (s.find('/') != std::string_view::npos) {
            const auto slash = s.find('/');
            const double denom = parse_number(trim(s.substr(slash + 1)), whole);
            if (denom == 0.0) {
                throw std::invalid_argument("zero denominator in angle '" + std::string(whole) + "'");
            }
            return sign * parse_number(trim(s.substr(0, slash)), whole) / denom;
        }
        return sign * parse_number(s, whole);
    }
    std::string_view coeff = trim(s.substr(0, pi_pos));
    if (!coeff.empty() && coeff.back() == '*') {
        coeff = trim(coeff.substr(0, coeff.size() - 1));
    }
    double value = coeff.empty() ? 1.0 : parse_number(coeff, whole);
    std::string_view rest = trim(s.substr(pi_pos + 2));
    if (!rest.empty()) {
        if (rest.front() != '/') {
            throw std::invalid_argument("malformed angle '" + std::string(whole) + "'");
        }
        const double denom = parse_number(trim(rest.substr(1)), whole);
        if (denom == 0.0) {
            throw std::invalid_argument("zero denominator in angle '" + std::string(whole) + "'");
        }
        value /= denom;
    }
    return sign * value * kPi;
}

std::string format_angle(double radians) {
    if (radians == 0.0) {
        return "0";
    }
    const double turns = radians / kPi;
    for (int q = 1; q <= 12; ++q) {
        const double p = turns * q;
        const double rounded = std::round(p);
        if (std::abs(p - rounded) < 1e-12 && rounded != 0.0) {
            const long long num = static_cast<long long>(rounded);
            std::string out = num == 1 ? "" : (num == -1 ? "-" : std::to_string(num));
            out += "pi";
            if (q != 1) {
                out += "/" + std::to_string(q);
            }
            return out;
        }
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", radians);
    return buf;
}

}  // namespace ewfnogo
