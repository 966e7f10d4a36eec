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

#include "scm/metrics.hpp"

#include "scm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace scm {

namespace {

constexpr double kBoltzmann = 1.380649e-23;
constexpr double kReferenceTemperature = 290.0;

void make_first_entry_real(Eigen::VectorXcd& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v[i]);
        if (mag > 1e-300) {
            v *= std::conj(v[i]) / mag;
            v[i] = {std::abs(v[i]), 0.0};
            return;
        }
    }
}

} // namespace

BeamformingPair svd_beamforming(const Eigen::MatrixXcd& h)
{
    BeamformingPair bf;
    bf.tx_weights = Eigen::VectorXcd::Zero(h.rows());
    bf.rx_weights = Eigen::VectorXcd::Zero(h.cols());
    if (h.size() == 0) {
        throw ContractViolation("svd_beamforming: empty matrix");
    }
    if (!h.allFinite()) {
        throw ContractViolation("svd_beamforming: non-finite channel entries");
    }
    if (h.cwiseAbs().maxCoeff() == 0.0) {
        bf.tx_weights[0] = 1.0;
        bf.rx_weights[0] = 1.0;
        return bf;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    bf.gain = svd.singularValues()[0];
    // u^H H v = sigma_1, so the transmit weights are the conjugated left vector.
    bf.tx_weights = svd.matrixU().col(0).conjugate();
    bf.rx_weights = svd.matrixV().col(0);
    bf.tx_weights.normalize();
    bf.rx_weights.normalize();
    make_first_entry_real(bf.tx_weights);
    make_first_entry_real(bf.rx_weights);
    return bf;
}

double thermal_noise_dbm(double bandwidth_hz, double noise_figure_db)
{
    return 10.0 * std::log10(kBoltzmann * kReferenceTemperature * bandwidth_hz * 1e3) + noise_figure_db;
}

const ChannelRealization& DropChannels::realization(int gnb, int ue) const
{
    const auto it = realizations.find({gnb, ue});
    if (it == realizations.end()) {
        throw ContractViolation("missing channel realization for gNB " + std::to_string(gnb) + " -> UE " +
                                std::to_string(ue));
    }
    return it->second;
}

const BeamformingPair& DropChannels::beam(int gnb, int ue) const
{
    const auto it = beams.find({gnb, ue});
    if (it == beams.end()) {
        throw ContractViolation("missing beamforming pair for gNB " + std::to_string(gnb) + " -> UE " +
                                std::to_string(ue));
    }
    return it->second;
}

double link_amplitude(const Link& link, const ScenarioConfig& config)
{
    return std::sqrt(db_to_linear(config.tx_power - link.coupling_loss_db()));
}

std::vector<double> narrowband_sinr(const Deployment& deployment, const DropChannels& channels,
                                    const ScenarioConfig& config, std::span<const int> victims)
{
    const double noise_mw = db_to_linear(thermal_noise_dbm(config.bandwidth, config.noise_figure));
    const double tx_mw = db_to_linear(config.tx_power);
    std::vector<double> out;
    out.reserve(victims.size());
    for (const int ue : victims) {
        const int serving = deployment.attachment.at(ue);
        const BeamformingPair& own = channels.beam(serving, ue);
        const double rx_mw =
            tx_mw * db_to_linear(-deployment.link(serving, ue).coupling_loss_db()) * own.gain * own.gain;
        double interference_mw = 0.0;
        for (int g = 0; g < deployment.num_gnbs(); ++g) {
            const int target = g < static_cast<int>(channels.active_ue.size()) ? channels.active_ue[g] : -1;
            if (g == serving || target < 0) {
                continue; // idle gNBs do not transmit
            }
            const Eigen::MatrixXcd h = channels.realization(g, ue).narrowband();
            const auto& w_tx = channels.beam(g, target).tx_weights;
            const std::complex<double> y = (w_tx.transpose() * h * own.rx_weights)(0, 0);
            interference_mw += tx_mw * db_to_linear(-deployment.link(g, ue).coupling_loss_db()) * std::norm(y);
        }
        out.push_back(linear_to_db(rx_mw / (noise_mw + interference_mw)));
    }
    return out;
}

SirGrid wideband_sir(std::span<const std::complex<double>> victim,
                     std::span<const std::vector<std::complex<double>>> interferers, InterferenceSum mode)
{
    for (const auto& i : interferers) {
        if (i.size() != victim.size()) {
            throw ContractViolation("wideband_sir: interferer grid has " + std::to_string(i.size()) +
                                    " subcarriers, victim has " + std::to_string(victim.size()));
        }
    }
    SirGrid out;
    out.sir_db.resize(victim.size());
    for (std::size_t k = 0; k < victim.size(); ++k) {
        double denom = 0.0;
        if (mode == InterferenceSum::Coherent) {
            std::complex<double> sum{0.0, 0.0};
            for (const auto& i : interferers) {
                sum += i[k];
            }
            denom = std::norm(sum);
        } else {
            for (const auto& i : interferers) {
                denom += std::norm(i[k]);
            }
        }
        if (denom == 0.0) {
            out.sir_db[k] = std::numeric_limits<double>::infinity();
            ++out.infinite;
        } else {
            out.sir_db[k] = linear_to_db(std::norm(victim[k]) / denom);
        }
    }
    return out;
}

std::vector<int> below_threshold_runs(std::span<const double> sir_db, double threshold_db)
{
    std::vector<int> runs;
    int current = 0;
    for (const double v : sir_db) {
        if (v < threshold_db) {
            ++current;
        } else if (current > 0) {
            runs.push_back(current);
            current = 0;
        }
    }
    if (current > 0) {
        runs.push_back(current);
    }
    return runs;
}

double lcf(std::span<const double> sir_db, double threshold_db)
{
    if (sir_db.size() < 2) {
        return 0.0;
    }
    std::size_t crossings = 0;
    for (std::size_t k = 0; k + 1 < sir_db.size(); ++k) {
        if (sir_db[k] < threshold_db && sir_db[k + 1] >= threshold_db) {
            ++crossings;
        }
    }
    return static_cast<double>(crossings) / static_cast<double>(sir_db.size());
}

double afbw(std::span<const double> sir_db, double threshold_db, double subcarrier_spacing_hz)
{
    const auto runs = below_threshold_runs(sir_db, threshold_db);
    if (runs.empty()) {
        return 0.0;
    }
    const double total = std::accumulate(runs.begin(), runs.end(), 0.0);
    return total / static_cast<double>(runs.size()) * subcarrier_spacing_hz / 1e3;
}

SingularValueRatios singular_value_ratios(std::span<const Eigen::MatrixXcd> matrices)
{
    SingularValueRatios out;
    if (matrices.empty()) {
        return out;
    }
    const auto rows = matrices.front().rows();
    const auto cols = matrices.front().cols();
    const auto rank = static_cast<std::size_t>(std::min(rows, cols));
    std::vector<double> acc(rank, 0.0);
    for (const auto& h : matrices) {
        if (h.rows() != rows || h.cols() != cols) {
            throw ContractViolation("singular_value_ratios: matrices must share dimensions");
        }
        const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(h).singularValues();
        const double sum = sv.sum();
        if (!(sum > 0.0)) {
            ++out.excluded_zero;
            continue;
        }
        for (std::size_t k = 0; k < rank; ++k) {
            acc[k] += sv[static_cast<Eigen::Index>(k)] / sum;
        }
        ++out.used;
    }
    if (out.used == 0) {
        return out;
    }
    for (auto& a : acc) {
        a /= static_cast<double>(out.used);
    }
    // Renormalise so rounding in the per-link divisions cannot leave the sum off 1.
    const double total = std::accumulate(acc.begin(), acc.end(), 0.0);
    for (auto& a : acc) {
        a /= total;
    }
    out.mean_ratios = std::move(acc);
    return out;
}

std::vector<CdfPoint> empirical_cdf(std::vector<double> samples)
{
    if (samples.empty()) {
        throw ContractViolation("empirical_cdf: need at least one sample");
    }
    std::sort(samples.begin(), samples.end());
    std::vector<CdfPoint> out;
    const double n = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i + 1 < samples.size() && samples[i + 1] == samples[i]) {
            continue;
        }
        out.push_back({samples[i], static_cast<double>(i + 1) / n});
    }
    return out;
}

double ks_statistic(std::vector<double> a, std::vector<double> b)
{
    if (a.empty() || b.empty()) {
        throw ContractViolation("ks_statistic: both samples must be non-empty");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) {
            ++i;
        }
        while (j < b.size() && b[j] == x) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

} // namespace scm
