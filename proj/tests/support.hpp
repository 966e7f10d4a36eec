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

#include "scm/parameter_table.hpp"
#include "scm/scenario.hpp"

#include <Eigen/Dense>

#include <complex>
#include <filesystem>
#include <random>
#include <string>

namespace scm::test {

inline const ParameterTable& uma_table()
{
    static const ParameterTable table = ParameterTable::load(default_parameter_file());
    return table;
}

inline Eigen::MatrixXcd random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& gen)
{
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        m.data()[i] = {g(gen), g(gen)};
    }
    return m;
}

inline Eigen::VectorXcd random_unit_vector(Eigen::Index n, std::mt19937_64& gen)
{
    Eigen::VectorXcd v = random_matrix(n, 1, gen);
    return v / v.norm();
}

/// Small layout that keeps end-to-end tests fast.
inline ScenarioConfig small_scenario()
{
    ScenarioConfig c;
    c.num_ues = 42;
    c.seed = 7;
    return c;
}

inline std::filesystem::path scratch_dir(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("scmlite_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace scm::test
