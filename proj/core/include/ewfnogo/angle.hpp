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

#pragma once

#include <numbers>
#include <string>
#include <string_view>

namespace ewfnogo {

inline constexpr double kPi = std::numbers::pi;

/// Angle in the x-z great circle of the Bloch sphere, measured from +Z
/// towards +X. Always stored normalized to [0, 2pi).
class BlochAngle {
public:
    constexpr BlochAngle() = default;
    explicit BlochAngle(double radians);

    double radians() const { return radians_; }

    friend bool operator==(const BlochAngle &, const BlochAngle &) = default;

private:
    double radians_ = 0.0;
};

/// Parses an angle written as a rational multiple of pi ("3pi/4", "-pi/4",
/// "pi", "2*pi/3", "0") or as a plain decimal number of radians ("0.5").
/// Throws std::invalid_argument on malformed input.
double parse_angle(std::string_view text);

/// Renders radians as "<p>pi/<q>" when the value is a small rational multiple
/// of pi, otherwise as a 17-significant-digit decimal.
std::string format_angle(double radians);

}  // namespace ewfnogo
