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
#include "scm/parameter_table.hpp"
#include "scm/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace scm {

/// Downlink urban-macro layout and link-budget settings.
struct ScenarioConfig {
    double inter_site_distance = 500.0; // m
    int num_sites = 7;
    int sectors_per_site = 3;
    double gnb_height = 25.0; // m
    double ue_height = 1.5;   // m
    int num_ues = 210;
    double indoor_fraction = 0.8;
    double carrier_frequency = 30e9;  // Hz
    double bandwidth = 100e6;         // Hz
    double subcarrier_spacing = 60e3; // Hz
    double tx_power = 35.0;           // dBm
    double noise_figure = 9.0;        // dB
    std::uint64_t seed = 1;

    // Outdoor-to-indoor loss: building penetration plus a per-metre indoor term
    // over a distance drawn uniformly in [0, o2i_max_indoor_distance].
    double o2i_penetration_loss = 20.0;  // dB
    double o2i_indoor_loss_per_m = 0.5;  // dB/m
    double o2i_max_indoor_distance = 25.0; // m
    double min_ue_distance = 10.0;       // m, 2D distance to any site

    /// Throws ConfigError on the first violated invariant.
    void validate() const;

    int num_gnbs() const noexcept { return num_sites * sectors_per_site; }
    /// round(bandwidth / subcarrier_spacing); 1667 for the defaults.
    int num_subcarriers() const noexcept;
    double wavelength() const noexcept { return kSpeedOfLight / carrier_frequency; }
    double carrier_ghz() const noexcept { return carrier_frequency / 1e9; }

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct Link {
    int gnb_id = 0;
    int ue_id = 0;
    double d2d = 0.0; // m
    double d3d = 0.0; // m
    ChannelState state = ChannelState::NLoS;
    double indoor_distance = 0.0; // m, O2I only
    double pathloss_db = 0.0;
    double shadow_fading_db = 0.0;
    bool distance_clamped = false;

    double coupling_loss_db() const noexcept { return pathloss_db + shadow_fading_db; }

    friend bool operator==(const Link&, const Link&) = default;
};

struct Deployment {
    int num_sites = 0;
    int sectors_per_site = 0;
    std::vector<Vec3> gnb_positions;     // one per gNB (sectors of a site share a position)
    std::vector<double> sector_azimuths; // boresight per gNB, degrees
    std::vector<Vec3> ue_positions;
    std::vector<bool> ue_indoor;
    std::vector<double> ue_orientations; // array boresight azimuth per UE, degrees
    std::vector<Link> links;             // gNB-major: links[gnb * num_ues + ue]
    std::vector<int> attachment;         // ue -> gnb

    int num_gnbs() const noexcept { return static_cast<int>(gnb_positions.size()); }
    int num_ues() const noexcept { return static_cast<int>(ue_positions.size()); }
    int site_of(int gnb) const noexcept { return gnb / sectors_per_site; }
    const Link& link(int gnb, int ue) const { return links.at(static_cast<std::size_t>(gnb) * ue_positions.size() + ue); }
    Link& link(int gnb, int ue) { return links.at(static_cast<std::size_t>(gnb) * ue_positions.size() + ue); }

    /// UEs attached to one of the sectors of site 0 (the centre of the layout).
    std::vector<int> central_ues() const;
    std::vector<int> ues_attached_to(int gnb) const;

    friend bool operator==(const Deployment&, const Deployment&) = default;
};

/// Number of sites in a centred hexagonal layout with `rings` rings around the centre.
constexpr int hexagonal_site_count(int rings) noexcept { return 1 + 3 * rings * (rings + 1); }

/// Site positions (z = 0) of a centred hexagonal grid; throws ConfigError if
/// `num_sites` is not a centred hexagonal number.
std::vector<Vec3> hexagonal_sites(int num_sites, double inter_site_distance);

/// Probability that an outdoor UE at 2D distance `d2d` is in line of sight.
double los_probability(double d2d, double ue_height);

ChannelState assign_channel_state(bool ue_indoor, double d2d, double ue_height, Rng& rng);

struct PathlossResult {
    double db = 0.0;
    bool clamped = false; // distance raised to the 10 m validity floor
};

/// Breakpoint distance of the dual-slope LoS model, metres.
double breakpoint_distance(const ScenarioConfig& config);

PathlossResult pathloss_db(ChannelState state, double d2d, double d3d, double indoor_distance,
                           const ScenarioConfig& config);
PathlossResult pathloss_db(const Link& link, const ScenarioConfig& config);

double shadow_fading_db(ChannelState state, const ParameterTable& params, double fc_ghz, Rng& rng);

/// ue -> argmin over gNBs of (pathloss + shadowing); ties go to the lower gNB id.
std::vector<int> attach_ues(std::span<const Link> links, int num_gnbs, int num_ues);
std::vector<int> attach_ues(const Deployment& deployment);

Deployment drop_scenario(const ScenarioConfig& config, const ParameterTable& params, Rng& rng);

} // namespace scm
