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

#include "scm/errors.hpp"
#include "scm/metrics.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>

using namespace scm;

namespace {

std::complex<double> bilinear(const Eigen::VectorXcd& a, const Eigen::MatrixXcd& h, const Eigen::VectorXcd& b)
{
    std::complex<double> s{0.0, 0.0};
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        for (Eigen::Index j = 0; j < h.cols(); ++j) {
            s += a[i] * h(i, j) * b[j];
        }
    }
    return s;
}

ChannelRealization flat(const Eigen::MatrixXcd& h)
{
    ChannelRealization r;
    r.matrices = {h};
    r.delays = {0.0};
    return r;
}

// gNB g serves UE g; every link has coupling loss `loss_db`.
Deployment hand_deployment(int gnbs, double loss_db)
{
    Deployment d;
    d.num_sites = gnbs;
    d.sectors_per_site = 1;
    for (int g = 0; g < gnbs; ++g) {
        d.gnb_positions.push_back({100.0 * g, 0, 25});
        d.sector_azimuths.push_back(0.0);
        d.ue_positions.push_back({100.0 * g + 50, 0, 1.5});
        d.ue_indoor.push_back(false);
        d.ue_orientations.push_back(180.0);
        d.attachment.push_back(g);
    }
    for (int g = 0; g < gnbs; ++g) {
        for (int u = 0; u < gnbs; ++u) {
            Link l;
            l.gnb_id = g;
            l.ue_id = u;
            l.pathloss_db = loss_db;
            d.links.push_back(l);
        }
    }
    return d;
}

double noise_mw(const ScenarioConfig& c)
{
    return 1.380649e-23 * 290.0 * c.bandwidth * 1e3 * std::pow(10.0, c.noise_figure / 10.0);
}

struct TwoCell {
    Deployment deployment = hand_deployment(2, 100.0);
    DropChannels channels;
    ScenarioConfig config;

    TwoCell()
    {
        std::mt19937_64 gen(8);
        for (int g = 0; g < 2; ++g) {
            for (int u = 0; u < 2; ++u) {
                channels.realizations[{g, u}] = flat(test::random_matrix(4, 2, gen));
            }
            channels.beams[{g, g}] = svd_beamforming(channels.realizations[{g, g}].narrowband());
        }
        channels.active_ue = {0, 1};
    }

    double oracle_db(double interferer_scale = 1.0) const
    {
        const double ptx = std::pow(10.0, config.tx_power / 10.0);
        const auto& own = channels.beams.at({0, 0});
        const double s = ptx * std::pow(10.0, -deployment.link(0, 0).coupling_loss_db() / 10.0) * own.gain * own.gain;
        const auto y = interferer_scale *
                       bilinear(channels.beams.at({1, 1}).tx_weights, channels.realizations.at({1, 0}).matrices[0],
                                own.rx_weights);
        const double i = ptx * std::pow(10.0, -deployment.link(1, 0).coupling_loss_db() / 10.0) * std::norm(y);
        return 10.0 * std::log10(s / (noise_mw(config) + i));
    }

    double sinr() const
    {
        const std::vector<int> victims{0};
        return narrowband_sinr(deployment, channels, config, victims)[0];
    }
};

} // namespace

TEST(SvdBeamforming, Scalar)
{
    const auto bf = svd_beamforming(Eigen::MatrixXcd::Constant(1, 1, 2.0));
    EXPECT_NEAR(bf.gain, 2.0, 1e-15);
    EXPECT_EQ(bf.tx_weights[0], std::complex<double>(1.0, 0.0));
    EXPECT_EQ(bf.rx_weights[0], std::complex<double>(1.0, 0.0));
}

TEST(SvdBeamforming, Diagonal)
{
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
    h(0, 0) = 3.0;
    h(1, 1) = 1.0;
    const auto bf = svd_beamforming(h);
    EXPECT_NEAR(bf.gain, 3.0, 1e-14);
    EXPECT_NEAR(std::abs(bf.tx_weights[0] - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(bf.rx_weights[0] - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(bf.tx_weights[1]), 0.0, 1e-14);
}

TEST(SvdBeamforming, ZeroMatrixGivesCanonicalVectors)
{
    const auto bf = svd_beamforming(Eigen::MatrixXcd::Zero(3, 2));
    EXPECT_EQ(bf.gain, 0.0);
    EXPECT_EQ(bf.tx_weights, (Eigen::VectorXcd::Unit(3, 0)));
    EXPECT_EQ(bf.rx_weights, (Eigen::VectorXcd::Unit(2, 0)));
}

TEST(SvdBeamforming, NonFiniteRejected)
{
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Ones(2, 2);
    h(1, 0) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(svd_beamforming(h), ContractViolation);
}

TEST(SvdBeamforming, UnitWeightsAttainGain)
{
    std::mt19937_64 gen(1);
    for (int trial = 0; trial < 100; ++trial) {
        const auto h = test::random_matrix(8, 4, gen);
        const auto bf = svd_beamforming(h);
        EXPECT_NEAR(bf.tx_weights.norm(), 1.0, 1e-12);
        EXPECT_NEAR(bf.rx_weights.norm(), 1.0, 1e-12);
        EXPECT_NEAR(std::abs(bilinear(bf.tx_weights, h, bf.rx_weights)) / bf.gain, 1.0, 1e-9);
        EXPECT_EQ(bf.tx_weights[0].imag(), 0.0);
        EXPECT_GT(bf.tx_weights[0].real(), 0.0);
        EXPECT_EQ(bf.rx_weights[0].imag(), 0.0);
        EXPECT_GT(bf.rx_weights[0].real(), 0.0);
    }
}

TEST(SvdBeamforming, RandomSearchOracle)
{
    std::mt19937_64 gen(2);
    const auto h = test::random_matrix(8, 4, gen);
    const double gain = svd_beamforming(h).gain;

    Eigen::VectorXcd best_u = test::random_unit_vector(8, gen);
    Eigen::VectorXcd best_v = test::random_unit_vector(4, gen);
    double best = std::abs(bilinear(best_u, h, best_v));
    for (int i = 0; i < 100000; ++i) {
        const auto u = test::random_unit_vector(8, gen);
        const auto v = test::random_unit_vector(4, gen);
        const double x = std::abs(bilinear(u, h, v));
        ASSERT_LE(x, gain * (1.0 + 1e-12));
        if (x > best) {
            best = x;
            best_u = u;
            best_v = v;
        }
    }
    // Local random search from the best uniform pair.
    double step = 0.3;
    for (int i = 0; i < 20000 && best < 0.99 * gain; ++i) {
        Eigen::VectorXcd u = best_u + step * test::random_matrix(8, 1, gen);
        Eigen::VectorXcd v = best_v + step * test::random_matrix(4, 1, gen);
        u.normalize();
        v.normalize();
        const double x = std::abs(bilinear(u, h, v));
        ASSERT_LE(x, gain * (1.0 + 1e-12));
        if (x > best) {
            best = x;
            best_u = u;
            best_v = v;
        } else {
            step = std::max(step * 0.999, 1e-3);
        }
    }
    EXPECT_GE(best, 0.99 * gain);
}

TEST(SvdBeamforming, GlobalPhaseInvariance)
{
    std::mt19937_64 gen(3);
    const auto h = test::random_matrix(6, 3, gen);
    const auto a = svd_beamforming(h);
    const auto b = svd_beamforming(h * std::polar(1.0, 1.234));
    EXPECT_NEAR(a.gain, b.gain, 1e-12 * a.gain);
    EXPECT_NEAR(std::abs(std::abs(a.tx_weights.dot(b.tx_weights)) - 1.0), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(std::abs(a.rx_weights.dot(b.rx_weights)) - 1.0), 0.0, 1e-9);
}

TEST(ThermalNoise, MatchesLinkBudgetArithmetic)
{
    // -174 dBm/Hz rounds kT at 290 K; the exact value is 0.02 dB higher.
    EXPECT_NEAR(thermal_noise_dbm(100e6, 9.0), -85.0, 0.05);
    EXPECT_NEAR(thermal_noise_dbm(100e6, 9.0), 10.0 * std::log10(1.380649e-23 * 290.0 * 1e8 * 1e3) + 9.0, 1e-12);
}

TEST(NarrowbandSinr, SingleCellLinkBudget)
{
    const Deployment d = hand_deployment(1, 100.0);
    DropChannels ch;
    ch.realizations[{0, 0}] = flat(Eigen::MatrixXcd::Constant(1, 1, 1.0));
    ch.beams[{0, 0}] = svd_beamforming(ch.realizations[{0, 0}].narrowband());
    ch.active_ue = {0};
    const ScenarioConfig c;
    const std::vector<int> victims{0};
    const double g = narrowband_sinr(d, ch, c, victims)[0];
    EXPECT_NEAR(g, 20.0, 0.05);
    EXPECT_NEAR(g, 35.0 - 100.0 - 10.0 * std::log10(noise_mw(c)), 1e-9);
}

TEST(NarrowbandSinr, MatchesDirectEvaluation)
{
    const TwoCell t;
    EXPECT_NEAR(t.sinr(), t.oracle_db(), 1e-9);
}

TEST(NarrowbandSinr, InterferenceEqualToNoiseCostsThreeDb)
{
    TwoCell t;
    t.channels.active_ue = {0, -1};
    const double clean = t.sinr();
    t.channels.active_ue = {0, 1};
    const auto y = bilinear(t.channels.beams.at({1, 1}).tx_weights, t.channels.realizations.at({1, 0}).matrices[0],
                            t.channels.beams.at({0, 0}).rx_weights);
    // Pick the interferer loss so the interference power equals the noise power.
    t.deployment.link(1, 0).pathloss_db =
        t.config.tx_power + 10.0 * std::log10(std::norm(y)) - 10.0 * std::log10(noise_mw(t.config));
    EXPECT_NEAR(clean - t.sinr(), 10.0 * std::log10(2.0), 1e-9);
}

TEST(NarrowbandSinr, TransmitPowerScalesSignalAndInterference)
{
    TwoCell t;
    t.config.noise_figure = -300.0; // noise negligible
    const double before = t.sinr();
    t.config.tx_power += 10.0 * std::log10(2.0);
    EXPECT_NEAR(t.sinr(), before, 1e-9);

    TwoCell u;
    const double base = u.sinr();
    u.config.tx_power += 10.0 * std::log10(2.0);
    EXPECT_GT(u.sinr(), base);
    EXPECT_NEAR(u.sinr(), u.oracle_db(), 1e-9);
}

TEST(NarrowbandSinr, StrictlyDecreasesWithInterference)
{
    TwoCell t;
    double previous = t.sinr();
    for (int k = 0; k < 5; ++k) {
        t.channels.realizations[{1, 0}].matrices[0] *= 1.5;
        const double now = t.sinr();
        EXPECT_LT(now, previous);
        EXPECT_NEAR(now, t.oracle_db(), 1e-9);
        previous = now;
    }
}

TEST(NarrowbandSinr, MissingInterfererRealizationThrows)
{
    TwoCell t;
    t.channels.realizations.erase({1, 0});
    EXPECT_THROW(t.sinr(), ContractViolation);
}

TEST(NarrowbandSinr, IdleGnbDoesNotInterfere)
{
    TwoCell t;
    t.channels.active_ue = {0, -1};
    t.channels.realizations.erase({1, 0});
    const auto& own = t.channels.beams.at({0, 0});
    const double s = std::pow(10.0, (t.config.tx_power - 100.0) / 10.0) * own.gain * own.gain;
    EXPECT_NEAR(t.sinr(), 10.0 * std::log10(s / noise_mw(t.config)), 1e-9);
}

TEST(LinkAmplitude, FoldsLossIntoAmplitude)
{
    Link l;
    l.pathloss_db = 90.0;
    l.shadow_fading_db = 5.0;
    ScenarioConfig c;
    c.tx_power = 35.0;
    EXPECT_NEAR(link_amplitude(l, c), std::sqrt(std::pow(10.0, -6.0)), 1e-18);
}

TEST(WidebandSir, IdenticalInterfererIsZeroDb)
{
    std::mt19937_64 gen(1);
    const auto v = test::random_matrix(50, 1, gen);
    const std::vector<std::complex<double>> victim(v.data(), v.data() + v.size());
    const std::vector<std::vector<std::complex<double>>> intf{victim};
    const auto s = wideband_sir(victim, intf);
    for (double x : s.sir_db) {
        EXPECT_NEAR(x, 0.0, 1e-12);
    }
    EXPECT_EQ(s.infinite, 0u);
}

TEST(WidebandSir, CoherentCancellationFlagged)
{
    const std::vector<std::complex<double>> victim(10, {1.0, 0.5});
    std::vector<std::complex<double>> a(10);
    std::mt19937_64 gen(2);
    std::normal_distribution<double> g;
    for (auto& x : a) {
        x = {g(gen), g(gen)};
    }
    std::vector<std::complex<double>> b(10);
    for (std::size_t k = 0; k < 10; ++k) {
        b[k] = -a[k];
    }
    const std::vector<std::vector<std::complex<double>>> intf{a, b};
    const auto s = wideband_sir(victim, intf);
    EXPECT_EQ(s.infinite, 10u);
    for (double x : s.sir_db) {
        EXPECT_TRUE(std::isinf(x) && x > 0);
    }
    const auto inc = wideband_sir(victim, intf, InterferenceSum::Incoherent);
    EXPECT_EQ(inc.infinite, 0u);
}

TEST(WidebandSir, MatchesDirectEvaluation)
{
    std::mt19937_64 gen(3);
    std::normal_distribution<double> g;
    const std::size_t k = 1667;
    auto draw = [&] {
        std::vector<std::complex<double>> v(k);
        for (auto& x : v) {
            x = {g(gen), g(gen)};
        }
        return v;
    };
    const auto victim = draw();
    const std::vector<std::vector<std::complex<double>>> intf{draw(), draw(), draw()};
    const auto coh = wideband_sir(victim, intf);
    const auto inc = wideband_sir(victim, intf, InterferenceSum::Incoherent);
    for (std::size_t i = 0; i < k; ++i) {
        const double re = intf[0][i].real() + intf[1][i].real() + intf[2][i].real();
        const double im = intf[0][i].imag() + intf[1][i].imag() + intf[2][i].imag();
        const double num = victim[i].real() * victim[i].real() + victim[i].imag() * victim[i].imag();
        EXPECT_NEAR(coh.sir_db[i], 10.0 * std::log10(num / (re * re + im * im)), 1e-9);
        double den = 0.0;
        for (const auto& x : intf) {
            den += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
        }
        EXPECT_NEAR(inc.sir_db[i], 10.0 * std::log10(num / den), 1e-9);
    }
}

TEST(WidebandSir, GridMismatchThrows)
{
    const std::vector<std::complex<double>> victim(10);
    const std::vector<std::vector<std::complex<double>>> intf{std::vector<std::complex<double>>(9)};
    EXPECT_THROW(wideband_sir(victim, intf), ContractViolation);
}

TEST(Lcf, HandCounts)
{
    const std::vector<double> alt{-1.0, 1.0, -1.0, 1.0};
    EXPECT_EQ(lcf(alt, 0.0), 0.5);
    const std::vector<double> constant(100, 3.0);
    for (double t : {-10.0, 3.0, 3.5, 10.0}) {
        EXPECT_EQ(lcf(constant, t), 0.0);
    }
    EXPECT_EQ(lcf(alt, -2.0), 0.0);
    EXPECT_EQ(lcf(alt, 1.0 + 1e-9), 0.0);
    const std::vector<double> one{5.0};
    EXPECT_EQ(lcf(one, 0.0), 0.0);
}

TEST(Lcf, BoundedByHalf)
{
    std::mt19937_64 gen(4);
    std::normal_distribution<double> g(0.0, 10.0);
    std::vector<double> grid(1667);
    for (auto& x : grid) {
        x = g(gen);
    }
    for (double t = -30.0; t <= 30.0; t += 1.0) {
        const double v = lcf(grid, t);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 0.5);
    }
}

TEST(Afbw, HandCounts)
{
    const std::vector<double> grid{-5, -5, 5, -5, -5, -5, -5, 5};
    EXPECT_EQ(below_threshold_runs(grid, 0.0), (std::vector<int>{2, 4}));
    EXPECT_NEAR(afbw(grid, 0.0, 60e3), 180.0, 1e-12);
    const std::vector<double> low(1667, -3.0);
    EXPECT_NEAR(afbw(low, 0.0, 60e3), 1667 * 60.0, 1e-9);
    EXPECT_EQ(afbw(low, -10.0, 60e3), 0.0);
}

TEST(Afbw, TotalBelowThresholdMonotone)
{
    std::mt19937_64 gen(5);
    std::normal_distribution<double> g(0.0, 10.0);
    std::vector<double> grid(1667);
    for (auto& x : grid) {
        x = g(gen);
    }
    int previous = 0;
    for (double t = -40.0; t <= 40.0; t += 0.5) {
        const auto runs = below_threshold_runs(grid, t);
        const int total = std::accumulate(runs.begin(), runs.end(), 0);
        EXPECT_GE(total, previous);
        previous = total;
        const double w = afbw(grid, t, 60e3);
        EXPECT_GE(w, 0.0);
        EXPECT_LE(w, 1667 * 60.0);
    }
}

TEST(SingularValueRatios, IdentityAndRankOne)
{
    const std::vector<Eigen::MatrixXcd> id{Eigen::MatrixXcd::Identity(2, 2)};
    const auto a = singular_value_ratios(id);
    ASSERT_EQ(a.mean_ratios.size(), 2u);
    EXPECT_NEAR(a.mean_ratios[0], 0.5, 1e-15);
    EXPECT_NEAR(a.mean_ratios[1], 0.5, 1e-15);

    std::mt19937_64 gen(6);
    const Eigen::MatrixXcd r1 = test::random_matrix(4, 1, gen) * test::random_matrix(1, 3, gen);
    const std::vector<Eigen::MatrixXcd> rank_one{r1};
    const auto b = singular_value_ratios(rank_one);
    EXPECT_NEAR(b.mean_ratios[0], 1.0, 1e-12);
    EXPECT_NEAR(b.mean_ratios[1], 0.0, 1e-12);
    EXPECT_NEAR(b.mean_ratios[2], 0.0, 1e-12);
}

TEST(SingularValueRatios, ZeroMatrixExcluded)
{
    const std::vector<Eigen::MatrixXcd> m{Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Zero(2, 2)};
    const auto r = singular_value_ratios(m);
    EXPECT_EQ(r.used, 1u);
    EXPECT_EQ(r.excluded_zero, 1u);
    EXPECT_NEAR(r.mean_ratios[0], 0.5, 1e-15);
}

TEST(SingularValueRatios, DimensionMismatchThrows)
{
    const std::vector<Eigen::MatrixXcd> m{Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Identity(3, 2)};
    EXPECT_THROW(singular_value_ratios(m), ContractViolation);
}

TEST(SingularValueRatios, ProbabilityVector)
{
    std::mt19937_64 gen(7);
    std::vector<Eigen::MatrixXcd> m;
    for (int i = 0; i < 200; ++i) {
        m.push_back(test::random_matrix(16, 4, gen));
    }
    const auto r = singular_value_ratios(m);
    EXPECT_NEAR(std::accumulate(r.mean_ratios.begin(), r.mean_ratios.end(), 0.0), 1.0, 1e-12);
    for (std::size_t k = 0; k < r.mean_ratios.size(); ++k) {
        EXPECT_GE(r.mean_ratios[k], 0.0);
        if (k > 0) {
            EXPECT_LE(r.mean_ratios[k], r.mean_ratios[k - 1]);
        }
    }
}

TEST(EmpiricalCdf, Steps)
{
    const auto c = empirical_cdf({3.0, 1.0, 2.0});
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[0].value, 1.0);
    EXPECT_NEAR(c[0].probability, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(c[1].probability, 2.0 / 3.0, 1e-15);
    EXPECT_EQ(c[2].probability, 1.0);
    const auto ties = empirical_cdf({1.0, 1.0, 2.0, 2.0});
    ASSERT_EQ(ties.size(), 2u);
    EXPECT_EQ(ties[0].probability, 0.5);
    EXPECT_THROW(empirical_cdf({}), ContractViolation);
}

TEST(KolmogorovSmirnov, Extremes)
{
    const std::vector<double> x{0.3, -1.2, 4.0, 2.2};
    EXPECT_EQ(ks_statistic(x, x), 0.0);
    EXPECT_EQ(ks_statistic({0, 0, 0, 0}, {1, 1, 1, 1}), 1.0);
    EXPECT_NEAR(ks_statistic({1, 2, 3, 4}, {3, 4, 5, 6}), 0.5, 1e-15);
    EXPECT_THROW(ks_statistic({}, {1.0}), ContractViolation);
}
