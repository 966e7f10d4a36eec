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

#include "scm/geometry.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace scm {

/// Uniform rectangular array of isotropic elements. Elements lie in the plane
/// orthogonal to the boresight; rows stack vertically, columns horizontally.
/// Element 0 sits at the origin and is the phase reference.
class AntennaArray {
  public:
    AntennaArray(int rows, int cols, double wavelength, double spacing = 0.5,
                 double boresight_azimuth = 0.0, double downtilt = 0.0);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    int size() const noexcept { return rows_ * cols_; }
    double spacing() const noexcept { return spacing_; }
    double wavelength() const noexcept { return wavelength_; }
    double boresight_azimuth() const noexcept { return boresight_azimuth_; }
    double downtilt() const noexcept { return downtilt_; }
    const std::vector<Vec3>& element_positions() const noexcept { return positions_; }

  private:
    int rows_;
    int cols_;
    double wavelength_;
    double spacing_;
    double boresight_azimuth_;
    double downtilt_;
    std::vector<Vec3> positions_;
};

/// Array dimensions as written on the command line, e.g. "8x8".
struct ArrayShape {
    int rows = 1;
    int cols = 1;

    int size() const noexcept { return rows * cols; }
    std::string to_string() const { return std::to_string(rows) + "x" + std::to_string(cols); }
    friend bool operator==(ArrayShape, ArrayShape) = default;
};

/// Parses "RxC" (also accepts the multiplication sign). Throws ConfigError.
ArrayShape parse_array_shape(const std::string& text);

/// Plane-wave phase profile across the array for a direction given in degrees:
/// entry k is exp(j 2 pi (r . d_k) / wavelength).
Eigen::VectorXcd steering_vector(const AntennaArray& array, double azimuth, double zenith, double wavelength);

/// Same as steering_vector but writes into a preallocated column.
void steering_vector_into(const AntennaArray& array, const Vec3& unit_direction, double wavelength,
                          Eigen::Ref<Eigen::VectorXcd> out);

} // namespace scm
