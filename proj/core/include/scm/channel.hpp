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
#include "scm/geometry.hpp"
#include "scm/parameter_table.hpp"
#include "scm/phase_clock.hpp"
#include "scm/rng.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace scm {

/// Cluster counts per channel state and rays per cluster.
struct SimplificationConfig {
    int n_los = 12;
    int n_nlos = 20;
    int n_o2i = 12;
    int m_rays = 20;

    static constexpr SimplificationConfig baseline() noexcept { return {12, 20, 12, 20}; }
    static constexpr SimplificationConfig simplified() noexcept { return {8, 8, 8, 1}; }

    int clusters_for(ChannelState s) const noexcept;
    /// Cluster counts must be in {8, 12, 20} and tabulated in `params`; m_rays in [1, 20].
    void validate(const ParameterTable& params) const;
    /// "L/N/O"; parse_clusters accepts the same form.
    std::string clusters_string() const;
    std::string label() const;

    friend bool operator==(const SimplificationConfig&, const SimplificationConfig&) = default;
};

/// Parses "L/N/O" into the cluster fields of `cfg` (rays untouched). Throws ConfigError.
void parse_clusters(const std::string& text, SimplificationConfig& cfg);

struct LargeScaleParams {
    double delay_spread = 0.0; // s
    double asa = 0.0;          // deg
    double asd = 0.0;
    double zsa = 0.0;
    double zsd = 0.0;
    double k_factor = 0.0;     // dB, LoS only
    double r_tau = 0.0;
    double zeta = 0.0;         // per-cluster shadowing std, dB
    double c_asa = 0.0;        // intra-cluster spreads, deg
    double c_asd = 0.0;
    double c_zsa = 0.0;
    double c_zsd = 0.0;
};

/// Geometric line-of-sight directions of a link, degrees, plus its 3D length.
struct LinkGeometry {
    double los_aod = 0.0;
    double los_zod = 90.0;
    double los_aoa = 180.0;
    double los_zoa = 90.0;
    double d2d = 0.0;
    double d3d = 0.0;

    static LinkGeometry between(const Vec3& tx, const Vec3& rx);
};

LargeScaleParams draw_large_scale_params(ChannelState state, double fc_hz, double d2d, const ParameterTable& params,
                                         Rng& rng);

struct ClusterDelays {
    std::vector<double> delays;   // sorted, delays[0] == 0; LoS-scaled in LoS
    std::vector<double> unscaled; // before the LoS K-factor scaling, used for powers
};

ClusterDelays generate_cluster_delays(const LargeScaleParams& lsp, int n, ChannelState state,
                                      const ParameterTable& params, Rng& rng);

struct ClusterPowers {
    std::vector<double> powers;    // per-cluster share incl. the specular LoS part; sums to 1
    std::vector<double> scattered; // diffuse powers only; sums to 1
};

ClusterPowers generate_cluster_powers(std::span<const double> unscaled_delays, const LargeScaleParams& lsp,
                                      ChannelState state, Rng& rng);

struct Ray {
    double aod_az = 0.0;
    double aod_zen = 90.0;
    double aoa_az = 0.0;
    double aoa_zen = 90.0;
};

using RayAngles = std::vector<std::vector<Ray>>; // [cluster][ray]

/// Ray offsets used for an m-ray cluster: the central ray (0) when m == 1,
/// otherwise the m tabulated offsets of smallest magnitude in table order.
std::vector<double> ray_offset_subset(const std::array<double, 20>& table, int m);

RayAngles generate_angles(std::span<const double> powers, const LargeScaleParams& lsp, const LinkGeometry& geometry,
                          int m, ChannelState state, const ParameterTable& params, Rng& rng);

/// Randomly pairs arrival rays with departure rays within each cluster.
/// Returns the permutation applied to each cluster (arrival ray k takes the
/// arrival angles previously at index perm[k]).
std::vector<std::vector<int>> couple_rays(RayAngles& angles, Rng& rng);

/// Initial ray phases, uniform in (-pi, pi].
std::vector<std::vector<double>> draw_initial_phases(int n, int m, Rng& rng);

/// Per-link small-scale realization.
struct ClusterSet {
    ChannelState state = ChannelState::NLoS;
    LargeScaleParams lsp;
    std::vector<double> delays;
    std::vector<double> powers;
    std::vector<double> scattered_powers;
    RayAngles angles;
    std::vector<std::vector<int>> coupling;
    std::vector<std::vector<double>> phases;

    int num_clusters() const noexcept { return static_cast<int>(delays.size()); }
    int rays_per_cluster() const noexcept { return angles.empty() ? 0 : static_cast<int>(angles.front().size()); }
};

struct LinkId {
    std::uint64_t drop = 0;
    int gnb = 0;
    int ue = 0;
    friend bool operator==(LinkId, LinkId) = default;
};

/// Cluster delay line: one complex (tx x rx) matrix per cluster.
struct ChannelRealization {
    LinkId link;
    ChannelState state = ChannelState::NLoS;
    SimplificationConfig simplification;
    std::vector<Eigen::MatrixXcd> matrices;
    std::vector<double> delays;

    int num_clusters() const noexcept { return static_cast<int>(matrices.size()); }
    /// Sum over clusters (frequency-flat collapse at f = 0).
    Eigen::MatrixXcd narrowband() const;
};

struct MotionState {
    Vec3 ue_velocity{}; // m/s
    double time = 0.0;  // s
};

/// Combines rays into per-cluster matrices indexed (tx element, rx element).
/// In LoS, cluster 0 additionally carries the specular component.
ChannelRealization generate_channel_matrices(const ClusterSet& clusters, const AntennaArray& tx_array,
                                             const AntennaArray& rx_array, double wavelength,
                                             const LinkGeometry& geometry, const MotionState& motion = {},
                                             PhaseClock* clock = nullptr);

/// Centred baseband subcarrier frequencies, round(bandwidth / spacing) points.
std::vector<double> subcarrier_grid(double bandwidth, double spacing);

/// H(f) = sum_n (w_tx^T H_n w_rx) exp(-j 2 pi f tau_n) on the given grid.
std::vector<std::complex<double>> frequency_response(const ChannelRealization& realization,
                                                     const Eigen::VectorXcd& tx_weights,
                                                     const Eigen::VectorXcd& rx_weights,
                                                     std::span<const double> freq_grid);

/// Identifies the link inside the random-stream keyspace.
struct LinkContext {
    LinkId id;
    ChannelState state = ChannelState::NLoS;
    LinkGeometry geometry;
};

/// Draws cluster sets and channel realizations with one random sub-stream per
/// (link, generation phase). Stateless after construction; safe to share
/// across threads.
class ChannelGenerator {
  public:
    /// With `match_large_scale`, the stream keys ignore the simplification so
    /// different (N, M) configurations see the same large-scale draws.
    ChannelGenerator(const ParameterTable& params, SimplificationConfig config, double carrier_frequency,
                     std::uint64_t seed, bool match_large_scale = false);

    ClusterSet draw_clusters(const LinkContext& link, PhaseClock* clock = nullptr) const;

    ChannelRealization generate(const LinkContext& link, const AntennaArray& tx_array, const AntennaArray& rx_array,
                                PhaseClock* clock = nullptr, const MotionState& motion = {}) const;

    const SimplificationConfig& config() const noexcept { return config_; }
    double wavelength() const noexcept { return kSpeedOfLight / fc_; }

  private:
    Rng stream(StreamDomain domain, const LinkId& id) const;

    const ParameterTable* params_;
    SimplificationConfig config_;
    double fc_;
    std::uint64_t seed_;
    std::uint64_t variant_;
};

} // namespace scm
