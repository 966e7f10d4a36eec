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

#include "scm/antenna_array.hpp"

#include "scm/errors.hpp"

#include <charconv>

namespace scm {

AntennaArray::AntennaArray(int rows, int cols, double wavelength, double spacing, double boresight_azimuth,
                           double downtilt)
    : rows_(rows), cols_(cols), wavelength_(wavelength), spacing_(spacing),
      boresight_azimuth_(boresight_azimuth), downtilt_(downtilt)
{
    if (rows < 1 || cols < 1) {
        throw ConfigError("antenna array needs at least one row and one column");
    }
    if (!(wavelength > 0.0) || !(spacing > 0.0)) {
        throw ConfigError("antenna array wavelength and spacing must be positive");
    }
    const double d = spacing * wavelength;
    const double az = deg_to_rad(boresight_azimuth);
    const double tilt = deg_to_rad(downtilt);
    positions_.reserve(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            // Local frame: boresight +x, columns along +y, rows along +z.
            const double y = c * d;
            const double z = r * d;
            // Downtilt rotates the (x, z) plane about +y.
            const double xt = z * std::sin(tilt);
            const double zt = z * std::cos(tilt);
            positions_.push_back({xt * std::cos(az) - y * std::sin(az), xt * std::sin(az) + y * std::cos(az), zt});
        }
    }
}

ArrayShape parse_array_shape(const std::string& text)
{
    std::string s = text;
    for (const std::string sep : {"\xC3\x97", "X", "*"}) {
        for (auto pos = s.find(sep); pos != std::string::npos; pos = s.find(sep)) {
            s.replace(pos, sep.size(), "x");
        }
    }
    const auto x = s.find('x');
    ArrayShape shape;
    const auto parse = [&](std::string_view part, int& out) {
        const auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        return ec == std::errc{} && p == part.data() + part.size() && out >= 1;
    };
    if (x == std::string::npos || !parse(std::string_view(s).substr(0, x), shape.rows) ||
        !parse(std::string_view(s).substr(x + 1), shape.cols)) {
        throw ConfigError("array shape '" + text + "': expected ROWSxCOLS with positive integers");
    }
    return shape;
}

void steering_vector_into(const AntennaArray& array, const Vec3& u, double wavelength,
                          Eigen::Ref<Eigen::VectorXcd> out)
{
    const double k = 2.0 * kPi / wavelength;
    const auto& pos = array.element_positions();
    for (std::size_t i = 0; i < pos.size(); ++i) {
        const double phase = k * dot(u, pos[i]);
        out[static_cast<Eigen::Index>(i)] = {std::cos(phase), std::sin(phase)};
    }
}

Eigen::VectorXcd steering_vector(const AntennaArray& array, double azimuth, double zenith, double wavelength)
{
    Eigen::VectorXcd v(array.size());
    steering_vector_into(array, direction(azimuth, zenith), wavelength, v);
    return v;
}

} // namespace scm
