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

#include "scm/channel.hpp"
#include "scm/scenario.hpp"

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace scm {

/// Dominant-mode beamformer: |tx^T H rx| equals the largest singular value.
struct BeamformingPair {
    Eigen::VectorXcd tx_weights;
    Eigen::VectorXcd rx_weights;
    double gain = 0.0;
};

/// SVD beamforming on a narrowband (tx x rx) matrix. The first nonzero entry
/// of each weight vector is made real and positive. A zero matrix yields gain
/// 0 and the first canonical unit vectors.
BeamformingPair svd_beamforming(const Eigen::MatrixXcd& h);

/// k T B F in dBm, T = 290 K.
double thermal_noise_dbm(double bandwidth_hz, double noise_figure_db);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

using LinkKey = std::pair<int, int>; // (gnb, ue)

/// Channels and beams of one drop that the link metrics read.
struct DropChannels {
    std::map<LinkKey, ChannelRealization> realizations;
    std::map<LinkKey, BeamformingPair> beams; // serving links (victims and active interferer links)
    std::vector<int> active_ue;               // per gNB: the UE its beam points at, -1 when idle

    const ChannelRealization& realization(int gnb, int ue) const;
    const BeamformingPair& beam(int gnb, int ue) const;
};

/// Narrowband SINR (dB) of each victim UE after SVD beamforming. Every gNB
/// with an active UE other than the victim's server contributes interference
/// through its own beam and the victim's combiner.
std::vector<double> narrowband_sinr(const Deployment& deployment, const DropChannels& channels,
                                    const ScenarioConfig& config, std::span<const int> victims);

/// Received amplitude scale for a link: sqrt(P_tx * 10^(-(PL + SF) / 10)) in sqrt(mW).
double link_amplitude(const Link& link, const ScenarioConfig& config);

enum class InterferenceSum {
    Coherent,  // |sum_i H_i(f)|^2
    Incoherent // sum_i |H_i(f)|^2
};

struct SirGrid {
    std::vector<double> sir_db;  // +inf where the interference cancels
    std::size_t infinite = 0;    // number of flagged subcarriers
};

SirGrid wideband_sir(std::span<const std::complex<double>> victim,
                     std::span<const std::vector<std::complex<double>>> interferers,
                     InterferenceSum mode = InterferenceSum::Coherent);

/// Lengths of the maximal runs of consecutive subcarriers with sir < threshold.
std::vector<int> below_threshold_runs(std::span<const double> sir_db, double threshold_db);

/// Fraction of subcarriers at which the SIR crosses the threshold upwards.
double lcf(std::span<const double> sir_db, double threshold_db);

/// Mean width (kHz) of the below-threshold runs; 0 when there is none.
double afbw(std::span<const double> sir_db, double threshold_db, double subcarrier_spacing_hz);

struct SingularValueRatios {
    std::vector<double> mean_ratios; // non-increasing, sums to 1
    std::size_t used = 0;
    std::size_t excluded_zero = 0;   // zero matrices left out of the average
};

SingularValueRatios singular_value_ratios(std::span<const Eigen::MatrixXcd> matrices);

struct CdfPoint {
    double value;
    double probability;
};

/// Step CDF: one point per distinct sample value.
std::vector<CdfPoint> empirical_cdf(std::vector<double> samples);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

} // namespace scm
