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

#include "scm/antenna_array.hpp"
#include "scm/channel.hpp"
#include "scm/metrics.hpp"
#include "scm/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace scm {

/// Which link metrics a drop evaluates.
struct DropMetrics {
    bool sinr = true;
    bool sir = true; // per-subcarrier grids, also required by lcf/afbw
    bool svr = true;
    InterferenceSum interference = InterferenceSum::Coherent;
};

/// Everything needed to recompute the metrics of one drop.
struct DropRecord {
    std::uint64_t drop = 0;
    Deployment deployment;
    std::vector<int> victims; // UEs attached to the central site
    DropChannels channels;
};

struct DropOutcome {
    std::uint64_t drop = 0;
    std::vector<int> victims;
    std::vector<double> sinr_db;              // per victim
    std::vector<SirGrid> sir;                 // per victim
    std::vector<Eigen::MatrixXcd> serving_nb; // narrowband serving matrices, per victim
};

/// One gNB per drop transmits towards a UE picked uniformly among its own
/// attached UEs; -1 for a gNB nobody attached to.
std::vector<int> schedule_active_ues(const Deployment& deployment, Rng& rng);

class DropRunner {
  public:
    DropRunner(const ScenarioConfig& scenario, const ParameterTable& params, SimplificationConfig simplification,
               ArrayShape ue_array, ArrayShape gnb_array, bool match_large_scale = false);

    /// Deploys the scenario, then generates every channel the central-site metrics need.
    DropRecord generate(std::uint64_t drop) const;

    const ScenarioConfig& scenario() const noexcept { return scenario_; }

  private:
    ScenarioConfig scenario_;
    const ParameterTable* params_;
    ArrayShape ue_shape_;
    ArrayShape gnb_shape_;
    ChannelGenerator generator_;
};

/// Link metrics of a drop; a pure function of the record.
DropOutcome evaluate_drop(const DropRecord& record, const ScenarioConfig& scenario, const DropMetrics& what);

void save_drop_record(const DropRecord& record, const std::filesystem::path& path);
DropRecord load_drop_record(const std::filesystem::path& path);

} // namespace scm
