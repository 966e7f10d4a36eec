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

#include "scm/scenario.hpp"

#include "scm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace scm {

namespace {

void require(bool ok, const char* what)
{
    if (!ok) {
        throw ConfigError(std::string("scenario: ") + what);
    }
}

int rings_for(int num_sites)
{
    for (int rings = 0; hexagonal_site_count(rings) <= num_sites; ++rings) {
        if (hexagonal_site_count(rings) == num_sites) {
            return rings;
        }
    }
    return -1;
}

} // namespace

void ScenarioConfig::validate() const
{
    require(inter_site_distance > 0.0, "inter_site_distance must be > 0");
    require(num_sites >= 1, "num_sites must be >= 1");
    require(rings_for(num_sites) >= 0, "num_sites must be a centred hexagonal number (1, 7, 19, 37, ...)");
    require(sectors_per_site >= 1, "sectors_per_site must be >= 1");
    require(gnb_height > 0.0, "gnb_height must be > 0");
    require(ue_height > 0.0, "ue_height must be > 0");
    require(num_ues >= 1, "num_ues must be >= 1");
    require(indoor_fraction >= 0.0 && indoor_fraction <= 1.0, "indoor_fraction must lie in [0, 1]");
    require(carrier_frequency >= 0.5e9 && carrier_frequency <= 100e9, "carrier_frequency must lie in [0.5, 100] GHz");
    require(bandwidth > 0.0, "bandwidth must be > 0");
    require(subcarrier_spacing > 0.0, "subcarrier_spacing must be > 0");
    require(bandwidth >= 2.0 * subcarrier_spacing, "bandwidth must span at least two subcarriers");
    require(o2i_penetration_loss >= 0.0 && o2i_indoor_loss_per_m >= 0.0 && o2i_max_indoor_distance >= 0.0,
            "O2I losses must be non-negative");
    require(min_ue_distance >= 0.0, "min_ue_distance must be >= 0");
}

int ScenarioConfig::num_subcarriers() const noexcept
{
    return static_cast<int>(std::lround(bandwidth / subcarrier_spacing));
}

std::vector<int> Deployment::central_ues() const
{
    std::vector<int> out;
    for (int ue = 0; ue < num_ues(); ++ue) {
        if (site_of(attachment.at(ue)) == 0) {
            out.push_back(ue);
        }
    }
    return out;
}

std::vector<int> Deployment::ues_attached_to(int gnb) const
{
    std::vector<int> out;
    for (int ue = 0; ue < num_ues(); ++ue) {
        if (attachment.at(ue) == gnb) {
            out.push_back(ue);
        }
    }
    return out;
}

std::vector<Vec3> hexagonal_sites(int num_sites, double isd)
{
    const int rings = rings_for(num_sites);
    if (rings < 0) {
        throw ConfigError("scenario: num_sites = " + std::to_string(num_sites) +
                          " is not a centred hexagonal number");
    }
    struct Axial {
        int q, r, ring;
        double angle;
    };
    std::vector<Axial> cells;
    for (int q = -rings; q <= rings; ++q) {
        for (int r = -rings; r <= rings; ++r) {
            const int s = -q - r;
            const int ring = std::max({std::abs(q), std::abs(r), std::abs(s)});
            if (ring <= rings) {
                const double x = q + 0.5 * r;
                const double y = r * std::sqrt(3.0) / 2.0;
                cells.push_back({q, r, ring, ring == 0 ? 0.0 : std::atan2(y, x)});
            }
        }
    }
    std::sort(cells.begin(), cells.end(), [](const Axial& a, const Axial& b) {
        return a.ring != b.ring ? a.ring < b.ring : a.angle < b.angle;
    });
    std::vector<Vec3> out;
    out.reserve(cells.size());
    for (const auto& c : cells) {
        out.push_back({isd * (c.q + 0.5 * c.r), isd * (c.r * std::sqrt(3.0) / 2.0), 0.0});
    }
    return out;
}

double los_probability(double d2d, double ue_height)
{
    if (d2d <= 18.0) {
        return 1.0;
    }
    const double e = std::exp(-d2d / 63.0);
    double p = (18.0 / d2d) * (1.0 - e) + e;
    if (ue_height > 13.0) {
        const double c = std::pow((ue_height - 13.0) / 10.0, 1.5);
        p *= 1.0 + c * 1.25 * std::pow(d2d / 100.0, 3.0) * std::exp(-d2d / 150.0);
    }
    return std::clamp(p, 0.0, 1.0);
}

ChannelState assign_channel_state(bool ue_indoor, double d2d, double ue_height, Rng& rng)
{
    if (ue_indoor) {
        return ChannelState::O2I;
    }
    return rng.uniform() < los_probability(d2d, ue_height) ? ChannelState::LoS : ChannelState::NLoS;
}

double breakpoint_distance(const ScenarioConfig& config)
{
    // Effective antenna heights above a 1 m environment height.
    return 4.0 * (config.gnb_height - 1.0) * (config.ue_height - 1.0) * config.carrier_frequency / kSpeedOfLight;
}

PathlossResult pathloss_db(ChannelState state, double d2d, double d3d, double indoor_distance,
                           const ScenarioConfig& config)
{
    PathlossResult out;
    if (d3d < 10.0) {
        d3d = 10.0;
        d2d = std::max(d2d, 10.0);
        out.clamped = true;
    }
    const double fc = config.carrier_ghz();
    const double dbp = breakpoint_distance(config);
    const double dh = config.gnb_height - config.ue_height;

    double los = 28.0 + 22.0 * std::log10(d3d) + 20.0 * std::log10(fc);
    if (d2d > dbp) {
        los = 28.0 + 40.0 * std::log10(d3d) + 20.0 * std::log10(fc) - 9.0 * std::log10(dbp * dbp + dh * dh);
    }
    if (state == ChannelState::LoS) {
        out.db = los;
        return out;
    }
    const double nlos = std::max(
        los, 13.54 + 39.08 * std::log10(d3d) + 20.0 * std::log10(fc) - 0.6 * (config.ue_height - 1.5));
    out.db = nlos;
    if (state == ChannelState::O2I) {
        out.db += config.o2i_penetration_loss + config.o2i_indoor_loss_per_m * indoor_distance;
    }
    return out;
}

PathlossResult pathloss_db(const Link& link, const ScenarioConfig& config)
{
    return pathloss_db(link.state, link.d2d, link.d3d, link.indoor_distance, config);
}

double shadow_fading_db(ChannelState state, const ParameterTable& params, double fc_ghz, Rng& rng)
{
    return rng.normal(0.0, params.state(state).SF_sigma.at(fc_ghz));
}

std::vector<int> attach_ues(std::span<const Link> links, int num_gnbs, int num_ues)
{
    if (links.size() != static_cast<std::size_t>(num_gnbs) * num_ues) {
        throw ContractViolation("attach_ues: link table does not cover every gNB/UE pair");
    }
    std::vector<int> attachment(num_ues, 0);
    for (int ue = 0; ue < num_ues; ++ue) {
        double best = std::numeric_limits<double>::infinity();
        for (int g = 0; g < num_gnbs; ++g) {
            const double loss = links[static_cast<std::size_t>(g) * num_ues + ue].coupling_loss_db();
            if (loss < best) {
                best = loss;
                attachment[ue] = g;
            }
        }
    }
    return attachment;
}

std::vector<int> attach_ues(const Deployment& d)
{
    return attach_ues(d.links, d.num_gnbs(), d.num_ues());
}

Deployment drop_scenario(const ScenarioConfig& config, const ParameterTable& params, Rng& rng)
{
    config.validate();
    Deployment d;
    d.num_sites = config.num_sites;
    d.sectors_per_site = config.sectors_per_site;

    const auto sites = hexagonal_sites(config.num_sites, config.inter_site_distance);
    for (const auto& site : sites) {
        for (int s = 0; s < config.sectors_per_site; ++s) {
            d.gnb_positions.push_back({site.x, site.y, config.gnb_height});
            d.sector_azimuths.push_back(360.0 * s / config.sectors_per_site);
        }
    }

    int rings = 0;
    while (hexagonal_site_count(rings) < config.num_sites) {
        ++rings;
    }
    const double radius = rings * config.inter_site_distance + config.inter_site_distance / std::sqrt(3.0);
    d.ue_positions.reserve(config.num_ues);
    for (int ue = 0; ue < config.num_ues; ++ue) {
        Vec3 p;
        bool ok = false;
        while (!ok) {
            const double r = radius * std::sqrt(rng.uniform());
            const double phi = rng.uniform(-kPi, kPi);
            p = {r * std::cos(phi), r * std::sin(phi), config.ue_height};
            ok = std::all_of(sites.begin(), sites.end(), [&](const Vec3& s) {
                return horizontal_distance(s, p) >= config.min_ue_distance;
            });
        }
        d.ue_positions.push_back(p);
    }

    const auto n_indoor = static_cast<std::size_t>(std::lround(config.indoor_fraction * config.num_ues));
    std::vector<int> order(config.num_ues);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng.engine());
    d.ue_indoor.assign(config.num_ues, false);
    for (std::size_t i = 0; i < n_indoor; ++i) {
        d.ue_indoor[order[i]] = true;
    }

    std::vector<double> indoor_distance(config.num_ues, 0.0);
    d.ue_orientations.resize(config.num_ues);
    for (int ue = 0; ue < config.num_ues; ++ue) {
        if (d.ue_indoor[ue]) {
            indoor_distance[ue] = rng.uniform(0.0, config.o2i_max_indoor_distance);
        }
        d.ue_orientations[ue] = rng.uniform(-180.0, 180.0);
    }

    const int n_gnb = d.num_gnbs();
    d.links.reserve(static_cast<std::size_t>(n_gnb) * config.num_ues);
    for (int g = 0; g < n_gnb; ++g) {
        for (int ue = 0; ue < config.num_ues; ++ue) {
            Link l;
            l.gnb_id = g;
            l.ue_id = ue;
            l.d2d = horizontal_distance(d.gnb_positions[g], d.ue_positions[ue]);
            l.d3d = norm(d.gnb_positions[g] - d.ue_positions[ue]);
            l.state = assign_channel_state(d.ue_indoor[ue], l.d2d, config.ue_height, rng);
            l.indoor_distance = indoor_distance[ue];
            const auto pl = pathloss_db(l, config);
            l.pathloss_db = pl.db;
            l.distance_clamped = pl.clamped;
            l.shadow_fading_db = shadow_fading_db(l.state, params, config.carrier_ghz(), rng);
            d.links.push_back(l);
        }
    }
    d.attachment = attach_ues(d);
    return d;
}

} // namespace scm
