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

#include "scm/channel.hpp"

#include "scm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace scm {

namespace {

constexpr std::complex<double> kJ{0.0, 1.0};

// Reflects zenith angles leaving [0, 180] and turns the azimuth around so the
// direction vector stays the same.
void wrap_direction(double& az, double& zen)
{
    double z = std::fmod(zen, 360.0);
    if (z < 0.0) {
        z += 360.0;
    }
    if (z > 180.0) {
        z = 360.0 - z;
        az += 180.0;
    }
    zen = z;
    az = wrap_azimuth(az);
}

} // namespace

int SimplificationConfig::clusters_for(ChannelState s) const noexcept
{
    switch (s) {
    case ChannelState::LoS:
        return n_los;
    case ChannelState::NLoS:
        return n_nlos;
    case ChannelState::O2I:
        return n_o2i;
    }
    return n_nlos;
}

void SimplificationConfig::validate(const ParameterTable& params) const
{
    for (const auto& [name, n] : {std::pair{"LoS", n_los}, std::pair{"NLoS", n_nlos}, std::pair{"O2I", n_o2i}}) {
        if (n != 8 && n != 12 && n != 20) {
            throw ConfigError(std::string("clusters: ") + name + " cluster count " + std::to_string(n) +
                              " is not in the supported set {8, 12, 20}");
        }
        if (!params.c_phi(n) || !params.c_theta(n)) {
            throw ConfigError(std::string("clusters: no angular scaling constants tabulated for N = ") +
                              std::to_string(n));
        }
    }
    if (m_rays < 1 || m_rays > 20) {
        throw ConfigError("rays: M = " + std::to_string(m_rays) + " is outside [1, 20]");
    }
}

std::string SimplificationConfig::clusters_string() const
{
    return std::to_string(n_los) + "/" + std::to_string(n_nlos) + "/" + std::to_string(n_o2i);
}

std::string SimplificationConfig::label() const
{
    return "N=" + clusters_string() + ",M=" + std::to_string(m_rays);
}

void parse_clusters(const std::string& text, SimplificationConfig& cfg)
{
    std::vector<int> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, '/')) {
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) {
            throw ConfigError("clusters '" + text + "': expected L/N/O with integer counts");
        }
        v.push_back(n);
    }
    if (v.size() != 3) {
        throw ConfigError("clusters '" + text + "': expected three counts L/N/O");
    }
    cfg.n_los = v[0];
    cfg.n_nlos = v[1];
    cfg.n_o2i = v[2];
}

LinkGeometry LinkGeometry::between(const Vec3& tx, const Vec3& rx)
{
    LinkGeometry g;
    const Bearing dep = bearing(tx, rx);
    const Bearing arr = bearing(rx, tx);
    g.los_aod = dep.azimuth;
    g.los_zod = dep.zenith;
    g.los_aoa = arr.azimuth;
    g.los_zoa = arr.zenith;
    g.d2d = horizontal_distance(tx, rx);
    g.d3d = norm(rx - tx);
    return g;
}

LargeScaleParams draw_large_scale_params(ChannelState state, double fc_hz, double d2d, const ParameterTable& params,
                                         Rng& rng)
{
    const StateParams& p = params.state(state);
    const double fc = fc_hz / 1e9;
    const auto lognormal = [&](const FreqCoef& mu, const FreqCoef& sigma, double mu_shift = 0.0) {
        return std::pow(10.0, rng.normal(mu.at(fc) + mu_shift, sigma.at(fc)));
    };

    LargeScaleParams lsp;
    lsp.delay_spread = lognormal(p.lgDS_mu, p.lgDS_sigma);
    lsp.asd = std::min(lognormal(p.lgASD_mu, p.lgASD_sigma), params.max_azimuth_spread());
    lsp.asa = std::min(lognormal(p.lgASA_mu, p.lgASA_sigma), params.max_azimuth_spread());
    const double zsd_mu = std::max(p.lgZSD_mu.at(fc) + p.lgZSD_mu_d2d_km * d2d / 1000.0, p.lgZSD_mu_min);
    lsp.zsd = std::min(std::pow(10.0, rng.normal(zsd_mu, p.lgZSD_sigma.at(fc))), params.max_zenith_spread());
    lsp.zsa = std::min(lognormal(p.lgZSA_mu, p.lgZSA_sigma), params.max_zenith_spread());
    if (state == ChannelState::LoS) {
        lsp.k_factor = rng.normal(p.K_mu.at(fc), p.K_sigma.at(fc));
    }
    lsp.r_tau = p.r_tau.at(fc);
    lsp.zeta = p.zeta.at(fc);
    lsp.c_asa = p.c_ASA.at(fc);
    lsp.c_asd = p.c_ASD.at(fc);
    lsp.c_zsa = p.c_ZSA.at(fc);
    lsp.c_zsd = 0.375 * std::pow(10.0, zsd_mu);
    return lsp;
}

ClusterDelays generate_cluster_delays(const LargeScaleParams& lsp, int n, ChannelState state,
                                      const ParameterTable& params, Rng& rng)
{
    if (n < 1) {
        throw ContractViolation("generate_cluster_delays: need at least one cluster");
    }
    ClusterDelays out;
    out.unscaled.resize(n);
    for (auto& tau : out.unscaled) {
        tau = -lsp.r_tau * lsp.delay_spread * std::log(rng.uniform_open());
    }
    std::sort(out.unscaled.begin(), out.unscaled.end());
    const double first = out.unscaled.front();
    for (auto& tau : out.unscaled) {
        tau -= first;
    }
    out.delays = out.unscaled;
    if (state == ChannelState::LoS) {
        const double c_tau = params.c_tau_poly()(lsp.k_factor);
        for (auto& tau : out.delays) {
            tau /= c_tau;
        }
    }
    return out;
}

ClusterPowers generate_cluster_powers(std::span<const double> delays, const LargeScaleParams& lsp,
                                      ChannelState state, Rng& rng)
{
    ClusterPowers out;
    out.scattered.resize(delays.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < delays.size(); ++i) {
        const double z = rng.normal(0.0, lsp.zeta);
        out.scattered[i] =
            std::exp(-delays[i] * (lsp.r_tau - 1.0) / (lsp.r_tau * lsp.delay_spread)) * std::pow(10.0, -z / 10.0);
        sum += out.scattered[i];
    }
    for (auto& p : out.scattered) {
        p /= sum;
    }
    out.powers = out.scattered;
    if (state == ChannelState::LoS && !out.powers.empty()) {
        const double k = std::pow(10.0, lsp.k_factor / 10.0);
        for (auto& p : out.powers) {
            p /= (k + 1.0);
        }
        out.powers.front() += k / (k + 1.0);
    }
    return out;
}

std::vector<double> ray_offset_subset(const std::array<double, 20>& table, int m)
{
    if (m < 1 || m > 20) {
        throw ConfigError("rays: M = " + std::to_string(m) + " is outside [1, 20]");
    }
    if (m == 1) {
        return {0.0};
    }
    std::vector<int> idx(table.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return std::abs(table[a]) < std::abs(table[b]); });
    idx.resize(m);
    std::sort(idx.begin(), idx.end());
    std::vector<double> out;
    out.reserve(m);
    for (int i : idx) {
        out.push_back(table[i]);
    }
    return out;
}

RayAngles generate_angles(std::span<const double> powers, const LargeScaleParams& lsp, const LinkGeometry& geometry,
                          int m, ChannelState state, const ParameterTable& params, Rng& rng)
{
    const int n = static_cast<int>(powers.size());
    auto c_phi = params.c_phi(n);
    auto c_theta = params.c_theta(n);
    if (!c_phi || !c_theta) {
        throw ConfigError("no angular scaling constants tabulated for N = " + std::to_string(n));
    }
    double cphi = *c_phi;
    double ctheta = *c_theta;
    if (state == ChannelState::LoS) {
        cphi *= params.c_phi_los_poly()(lsp.k_factor);
        ctheta *= params.c_theta_los_poly()(lsp.k_factor);
    }
    const double pmax = *std::max_element(powers.begin(), powers.end());
    const double zoa_centre = state == ChannelState::O2I ? 90.0 : geometry.los_zoa;

    std::vector<double> aoa(n), aod(n), zoa(n), zod(n);
    for (int i = 0; i < n; ++i) {
        const double l = -std::log(powers[i] / pmax);
        const double az = 2.0 * std::sqrt(l) / (1.4 * cphi);
        const double zen = l / ctheta;
        const auto sign = [&] { return rng.uniform() < 0.5 ? -1.0 : 1.0; };
        aoa[i] = sign() * lsp.asa * az + rng.normal(0.0, lsp.asa / 7.0) + geometry.los_aoa;
        aod[i] = sign() * lsp.asd * az + rng.normal(0.0, lsp.asd / 7.0) + geometry.los_aod;
        zoa[i] = sign() * lsp.zsa * zen + rng.normal(0.0, lsp.zsa / 7.0) + zoa_centre;
        zod[i] = sign() * lsp.zsd * zen + rng.normal(0.0, lsp.zsd / 7.0) + geometry.los_zod;
    }
    if (state == ChannelState::LoS) {
        // The first cluster carries the specular path: pin it on the geometric direction.
        const double d_aoa = aoa[0] - geometry.los_aoa;
        const double d_aod = aod[0] - geometry.los_aod;
        const double d_zoa = zoa[0] - geometry.los_zoa;
        const double d_zod = zod[0] - geometry.los_zod;
        for (int i = 0; i < n; ++i) {
            aoa[i] -= d_aoa;
            aod[i] -= d_aod;
            zoa[i] -= d_zoa;
            zod[i] -= d_zod;
        }
    }

    const auto offsets = ray_offset_subset(params.ray_offsets(), m);
    RayAngles rays(n, std::vector<Ray>(m));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < m; ++k) {
            Ray& r = rays[i][k];
            r.aoa_az = aoa[i] + lsp.c_asa * offsets[k];
            r.aoa_zen = zoa[i] + lsp.c_zsa * offsets[k];
            r.aod_az = aod[i] + lsp.c_asd * offsets[k];
            r.aod_zen = zod[i] + lsp.c_zsd * offsets[k];
            wrap_direction(r.aoa_az, r.aoa_zen);
            wrap_direction(r.aod_az, r.aod_zen);
        }
    }
    return rays;
}

std::vector<std::vector<int>> couple_rays(RayAngles& angles, Rng& rng)
{
    std::vector<std::vector<int>> perms;
    perms.reserve(angles.size());
    for (auto& cluster : angles) {
        std::vector<int> perm(cluster.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng.engine());
        std::vector<Ray> coupled = cluster;
        for (std::size_t k = 0; k < cluster.size(); ++k) {
            coupled[k].aoa_az = cluster[perm[k]].aoa_az;
            coupled[k].aoa_zen = cluster[perm[k]].aoa_zen;
        }
        cluster = std::move(coupled);
        perms.push_back(std::move(perm));
    }
    return perms;
}

std::vector<std::vector<double>> draw_initial_phases(int n, int m, Rng& rng)
{
    std::vector<std::vector<double>> phases(n, std::vector<double>(m));
    for (auto& cluster : phases) {
        for (auto& phi : cluster) {
            phi = kPi - 2.0 * kPi * rng.uniform();
        }
    }
    return phases;
}

Eigen::MatrixXcd ChannelRealization::narrowband() const
{
    if (matrices.empty()) {
        return {};
    }
    Eigen::MatrixXcd sum = matrices.front();
    for (std::size_t i = 1; i < matrices.size(); ++i) {
        sum += matrices[i];
    }
    return sum;
}

ChannelRealization generate_channel_matrices(const ClusterSet& clusters, const AntennaArray& tx_array,
                                             const AntennaArray& rx_array, double wavelength,
                                             const LinkGeometry& geometry, const MotionState& motion,
                                             PhaseClock* clock)
{
    const int n = clusters.num_clusters();
    const int m = clusters.rays_per_cluster();
    const Eigen::Index s = tx_array.size();
    const Eigen::Index u = rx_array.size();
    if (static_cast<int>(clusters.scattered_powers.size()) != n || static_cast<int>(clusters.phases.size()) != n) {
        throw ContractViolation("generate_channel_matrices: incomplete cluster set");
    }

    ChannelRealization out;
    out.state = clusters.state;
    out.delays = clusters.delays;
    out.matrices.assign(n, Eigen::MatrixXcd(s, u));

    Eigen::MatrixXcd a_tx(s, m);
    Eigen::MatrixXcd a_rx(u, m);
    Eigen::VectorXcd coeff(m);

    double diffuse = 1.0;
    double specular = 0.0;
    if (clusters.state == ChannelState::LoS) {
        const double k = std::pow(10.0, clusters.lsp.k_factor / 10.0);
        diffuse = std::sqrt(1.0 / (k + 1.0));
        specular = std::sqrt(k / (k + 1.0));
    }
    const double two_pi_t_over_lambda = 2.0 * kPi * motion.time / wavelength;

    ScopedPhase scope(clock, Phase::Computations);
    for (int c = 0; c < n; ++c) {
        const double amplitude = diffuse * std::sqrt(clusters.scattered_powers[c] / m);
        for (int k = 0; k < m; ++k) {
            const Ray& ray = clusters.angles[c][k];
            const Vec3 dep = direction(ray.aod_az, ray.aod_zen);
            const Vec3 arr = direction(ray.aoa_az, ray.aoa_zen);
            steering_vector_into(tx_array, dep, wavelength, a_tx.col(k));
            steering_vector_into(rx_array, arr, wavelength, a_rx.col(k));
            const double doppler_phase = two_pi_t_over_lambda * dot(arr, motion.ue_velocity);
            coeff[k] = amplitude * std::exp(kJ * (clusters.phases[c][k] + doppler_phase));
        }
        out.matrices[c].noalias() = a_tx * (coeff.asDiagonal() * a_rx.transpose());
    }
    if (specular > 0.0 && n > 0) {
        const Vec3 dep = direction(geometry.los_aod, geometry.los_zod);
        const Vec3 arr = direction(geometry.los_aoa, geometry.los_zoa);
        Eigen::VectorXcd los_tx(s);
        Eigen::VectorXcd los_rx(u);
        steering_vector_into(tx_array, dep, wavelength, los_tx);
        steering_vector_into(rx_array, arr, wavelength, los_rx);
        const double phase = -2.0 * kPi * geometry.d3d / wavelength + two_pi_t_over_lambda * dot(arr, motion.ue_velocity);
        out.matrices[0].noalias() += (specular * std::exp(kJ * phase)) * los_tx * los_rx.transpose();
    }
    return out;
}

std::vector<double> subcarrier_grid(double bandwidth, double spacing)
{
    const auto count = static_cast<int>(std::lround(bandwidth / spacing));
    std::vector<double> grid(count);
    const double centre = 0.5 * (count - 1);
    for (int k = 0; k < count; ++k) {
        grid[k] = (k - centre) * spacing;
    }
    return grid;
}

std::vector<std::complex<double>> frequency_response(const ChannelRealization& realization,
                                                     const Eigen::VectorXcd& tx_weights,
                                                     const Eigen::VectorXcd& rx_weights,
                                                     std::span<const double> freq_grid)
{
    if (realization.delays.size() != realization.matrices.size()) {
        throw ContractViolation("frequency_response: delay count does not match cluster count");
    }
    std::vector<std::complex<double>> gains;
    gains.reserve(realization.matrices.size());
    for (const auto& h : realization.matrices) {
        if (h.rows() != tx_weights.size() || h.cols() != rx_weights.size()) {
            throw ContractViolation("frequency_response: weight vector sizes (" + std::to_string(tx_weights.size()) +
                                    ", " + std::to_string(rx_weights.size()) + ") do not match channel matrix (" +
                                    std::to_string(h.rows()) + " x " + std::to_string(h.cols()) + ")");
        }
        gains.push_back((tx_weights.transpose() * h * rx_weights)(0, 0));
    }
    std::vector<std::complex<double>> response(freq_grid.size());
    for (std::size_t k = 0; k < freq_grid.size(); ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t c = 0; c < gains.size(); ++c) {
            acc += gains[c] * std::exp(-kJ * (2.0 * kPi * freq_grid[k] * realization.delays[c]));
        }
        response[k] = acc;
    }
    return response;
}

ChannelGenerator::ChannelGenerator(const ParameterTable& params, SimplificationConfig config, double carrier_frequency,
                                   std::uint64_t seed, bool match_large_scale)
    : params_(&params), config_(config), fc_(carrier_frequency), seed_(seed)
{
    config_.validate(params);
    variant_ = 0;
    if (!match_large_scale) {
        variant_ = 1 + mix64((static_cast<std::uint64_t>(config.n_los) << 24) ^
                             (static_cast<std::uint64_t>(config.n_nlos) << 16) ^
                             (static_cast<std::uint64_t>(config.n_o2i) << 8) ^ static_cast<std::uint64_t>(config.m_rays));
    }
}

Rng ChannelGenerator::stream(StreamDomain domain, const LinkId& id) const
{
    return Rng::derive(seed_, domain,
                       {variant_, id.drop, static_cast<std::uint64_t>(id.gnb), static_cast<std::uint64_t>(id.ue)});
}

ClusterSet ChannelGenerator::draw_clusters(const LinkContext& link, PhaseClock* clock) const
{
    const int n = config_.clusters_for(link.state);
    const int m = config_.m_rays;
    ClusterSet cs;
    cs.state = link.state;
    {
        ScopedPhase scope(clock, Phase::RandomVariables);
        Rng lsp_rng = stream(StreamDomain::LargeScale, link.id);
        cs.lsp = draw_large_scale_params(link.state, fc_, link.geometry.d2d, *params_, lsp_rng);

        Rng delay_rng = stream(StreamDomain::Delays, link.id);
        auto delays = generate_cluster_delays(cs.lsp, n, link.state, *params_, delay_rng);

        Rng power_rng = stream(StreamDomain::Powers, link.id);
        auto powers = generate_cluster_powers(delays.unscaled, cs.lsp, link.state, power_rng);

        Rng angle_rng = stream(StreamDomain::Angles, link.id);
        cs.angles = generate_angles(powers.powers, cs.lsp, link.geometry, m, link.state, *params_, angle_rng);

        Rng coupling_rng = stream(StreamDomain::Coupling, link.id);
        cs.coupling = couple_rays(cs.angles, coupling_rng);

        Rng phase_rng = stream(StreamDomain::Phases, link.id);
        cs.phases = draw_initial_phases(n, m, phase_rng);

        cs.delays = std::move(delays.delays);
        cs.powers = std::move(powers.powers);
        cs.scattered_powers = std::move(powers.scattered);
    }
    return cs;
}

ChannelRealization ChannelGenerator::generate(const LinkContext& link, const AntennaArray& tx_array,
                                              const AntennaArray& rx_array, PhaseClock* clock,
                                              const MotionState& motion) const
{
    const ClusterSet cs = draw_clusters(link, clock);
    ChannelRealization out =
        generate_channel_matrices(cs, tx_array, rx_array, wavelength(), link.geometry, motion, clock);
    out.link = link.id;
    out.simplification = config_;
    return out;
}

} // namespace scm
