// SPDX-License-Identifier: Apache-2.0
//
// scmlite: scalable spatial channel model simulator for mmWave networks
// Copyright (C) 2026 The scmlite authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

namespace scm {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;

constexpr double deg_to_rad(double deg) noexcept { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / kPi; }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) noexcept { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) noexcept { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator*(double s, Vec3 a) noexcept { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr bool operator==(Vec3, Vec3) = default;
};

constexpr double dot(Vec3 a, Vec3 b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) noexcept { return std::sqrt(dot(a, a)); }
inline double horizontal_distance(Vec3 a, Vec3 b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

/// Unit vector for a propagation direction given azimuth (from +x towards +y)
/// and zenith (from +z) in degrees.
inline Vec3 direction(double azimuth_deg, double zenith_deg) noexcept
{
    const double az = deg_to_rad(azimuth_deg);
    const double zen = deg_to_rad(zenith_deg);
    const double s = std::sin(zen);
    return {s * std::cos(az), s * std::sin(az), std::cos(zen)};
}

/// Azimuth/zenith (degrees) of the vector pointing from `from` to `to`.
struct Bearing {
    double azimuth = 0.0;
    double zenith = 90.0;
};

inline Bearing bearing(Vec3 from, Vec3 to) noexcept
{
    const Vec3 d = to - from;
    const double r = norm(d);
    if (r == 0.0) {
        return {};
    }
    return {rad_to_deg(std::atan2(d.y, d.x)), rad_to_deg(std::acos(std::clamp(d.z / r, -1.0, 1.0)))};
}

/// Wraps an azimuth into (-180, 180].
inline double wrap_azimuth(double deg) noexcept
{
    double w = std::fmod(deg, 360.0);
    if (w <= -180.0) {
        w += 360.0;
    } else if (w > 180.0) {
        w -= 360.0;
    }
    return w;
}

/// Reflects a zenith angle into [0, 180].
inline double reflect_zenith(double deg) noexcept
{
    double w = std::fmod(deg, 360.0);
    if (w < 0.0) {
        w += 360.0;
    }
    return w > 180.0 ? 360.0 - w : w;
}

} // namespace scm
