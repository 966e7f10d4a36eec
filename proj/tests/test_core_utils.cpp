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
#include "scm/geometry.hpp"
#include "scm/kv_file.hpp"
#include "scm/parameter_table.hpp"
#include "scm/rng.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

using namespace scm;

TEST(Rng, SameKeySameSequence)
{
    Rng a = Rng::derive(42, StreamDomain::Angles, {1, 2, 3});
    Rng b = Rng::derive(42, StreamDomain::Angles, {1, 2, 3});
    for (int i = 0; i < 100; ++i) {
        ASSERT_EQ(a.uniform(), b.uniform());
    }
}

TEST(Rng, DifferentKeysDiverge)
{
    Rng a = Rng::derive(42, StreamDomain::Angles, {1, 2, 3});
    Rng b = Rng::derive(42, StreamDomain::Angles, {1, 2, 4});
    Rng c = Rng::derive(42, StreamDomain::Delays, {1, 2, 3});
    Rng d = Rng::derive(43, StreamDomain::Angles, {1, 2, 3});
    const double x = a.uniform();
    EXPECT_NE(x, b.uniform());
    EXPECT_NE(x, c.uniform());
    EXPECT_NE(x, d.uniform());
}

TEST(Rng, ZeroSigmaNormalIsExactMean)
{
    Rng r(1);
    EXPECT_EQ(r.normal(3.25, 0.0), 3.25);
}

TEST(Rng, UniformOpenNeverZero)
{
    Rng r(5);
    for (int i = 0; i < 100000; ++i) {
        const double u = r.uniform_open();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Geometry, WrapAzimuthIntoHalfOpenRange)
{
    EXPECT_DOUBLE_EQ(wrap_azimuth(180.0), 180.0);
    EXPECT_DOUBLE_EQ(wrap_azimuth(-180.0), 180.0);
    EXPECT_DOUBLE_EQ(wrap_azimuth(190.0), -170.0);
    EXPECT_DOUBLE_EQ(wrap_azimuth(-190.0), 170.0);
    EXPECT_DOUBLE_EQ(wrap_azimuth(725.0), 5.0);
}

TEST(Geometry, ReflectZenith)
{
    EXPECT_DOUBLE_EQ(reflect_zenith(-10.0), 10.0);
    EXPECT_DOUBLE_EQ(reflect_zenith(190.0), 170.0);
    EXPECT_DOUBLE_EQ(reflect_zenith(90.0), 90.0);
}

TEST(Geometry, DirectionIsUnitAndBearingInverts)
{
    for (double az : {-170.0, -45.0, 0.0, 33.0, 120.0}) {
        for (double zen : {5.0, 60.0, 90.0, 150.0}) {
            const Vec3 d = direction(az, zen);
            EXPECT_NEAR(norm(d), 1.0, 1e-15);
            const Bearing b = bearing({0, 0, 0}, d);
            EXPECT_NEAR(b.azimuth, az, 1e-9);
            EXPECT_NEAR(b.zenith, zen, 1e-9);
        }
    }
}

TEST(KvFile, SectionsSubscriptsAndComments)
{
    const auto entries = parse_kv_text("a = 1 # trailing\n\n[LoS]\nC_phi[12] = 1.146\nname = x y\n");
    ASSERT_EQ(entries.size(), 3u);
    EXPECT_EQ(entries[0].section, "");
    EXPECT_EQ(entries[0].value, "1");
    EXPECT_EQ(entries[1].section, "LoS");
    EXPECT_EQ(entries[1].key, "C_phi");
    ASSERT_TRUE(entries[1].index.has_value());
    EXPECT_EQ(*entries[1].index, 12);
    EXPECT_EQ(entries[1].line, 4);
    EXPECT_EQ(entries[2].value, "x y");
}

TEST(KvFile, ErrorsCarryOriginAndLine)
{
    try {
        parse_kv_text("a = 1\nbroken line\n", "cfg.txt");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("cfg.txt:2"), std::string::npos) << e.what();
    }
}

TEST(KvFile, NumberParsing)
{
    EXPECT_DOUBLE_EQ(parse_number(" 2.5e3 ", "x"), 2500.0);
    EXPECT_THROW(parse_number("2.5x", "x"), ConfigError);
    EXPECT_EQ(parse_integer("12", "n"), 12);
    EXPECT_THROW(parse_integer("1.5", "n"), ConfigError);
    EXPECT_TRUE(parse_bool("yes", "b"));
    EXPECT_THROW(parse_bool("maybe", "b"), ConfigError);
    const auto v = parse_number_list("1, -2.5,3", "l");
    ASSERT_EQ(v.size(), 3u);
    EXPECT_DOUBLE_EQ(v[1], -2.5);
}

TEST(ParameterTable, BundledTableIsComplete)
{
    const ParameterTable& t = test::uma_table();
    for (auto s : {ChannelState::LoS, ChannelState::NLoS, ChannelState::O2I}) {
        EXPECT_TRUE(t.has_state(s));
    }
    for (int n : {8, 12, 20}) {
        EXPECT_TRUE(t.c_phi(n).has_value()) << n;
        EXPECT_TRUE(t.c_theta(n).has_value()) << n;
    }
    EXPECT_FALSE(t.c_phi(9).has_value());
    EXPECT_DOUBLE_EQ(t.ray_offsets()[0], 0.0447);
    EXPECT_DOUBLE_EQ(t.ray_offsets()[19], -2.1551);
    EXPECT_FALSE(t.version().empty());
    EXPECT_DOUBLE_EQ(t.state(ChannelState::LoS).SF_sigma.at(30.0), 4.0);
    EXPECT_EQ(t.state(ChannelState::NLoS).N_default, 20);
}

TEST(ParameterTable, FrequencyDependentCoefficient)
{
    const FreqCoef c{-6.955, -0.0963};
    EXPECT_NEAR(c.at(30.0), -6.955 - 0.0963 * std::log10(30.0), 1e-15);
}

TEST(ParameterTable, CTauPolynomial)
{
    const auto& p = test::uma_table().c_tau_poly();
    const double k = 9.0;
    EXPECT_NEAR(p(k), 0.7705 - 0.0433 * k + 0.0002 * k * k + 0.000017 * k * k * k, 1e-15);
}

namespace {

std::string minimal_table(const std::string& extra_state_line = "")
{
    std::string s = "version = t\nray_offsets = 0.0447, -0.0447, 0.1413, -0.1413, 0.2492, -0.2492, 0.3715, "
                    "-0.3715, 0.5129, -0.5129, 0.6797, -0.6797, 0.8844, -0.8844, 1.1481, -1.1481, 1.5195, "
                    "-1.5195, 2.1551, -2.1551\nC_phi[8] = 1.018\nC_theta[8] = 0.889\n[NLoS]\n";
    for (const char* k : {"lgDS_mu", "lgDS_sigma", "lgASA_mu", "lgASA_sigma", "lgASD_mu", "lgASD_sigma", "lgZSA_mu",
                          "lgZSA_sigma", "lgZSD_mu", "lgZSD_sigma", "K_mu", "K_sigma", "SF_sigma", "r_tau", "zeta",
                          "c_ASA", "c_ASD", "c_ZSA", "N_default"}) {
        s += std::string(k) + " = 1\n";
    }
    return s + extra_state_line;
}

} // namespace

TEST(ParameterTable, MinimalTableParses)
{
    const auto t = ParameterTable::parse(minimal_table());
    EXPECT_TRUE(t.has_state(ChannelState::NLoS));
    EXPECT_FALSE(t.has_state(ChannelState::LoS));
    EXPECT_THROW(t.state(ChannelState::LoS), ConfigError);
}

TEST(ParameterTable, UnknownKeyRejected)
{
    EXPECT_THROW(ParameterTable::parse(minimal_table("bogus = 3\n")), ConfigError);
}

TEST(ParameterTable, MissingKeyRejected)
{
    std::string text = minimal_table();
    const auto pos = text.find("zeta = 1\n");
    text.erase(pos, std::string("zeta = 1\n").size());
    try {
        ParameterTable::parse(text);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("zeta"), std::string::npos);
    }
}

TEST(ParameterTable, WrongOffsetCountRejected)
{
    std::string text = minimal_table();
    const auto pos = text.find(", -2.1551");
    text.erase(pos, std::string(", -2.1551").size());
    EXPECT_THROW(ParameterTable::parse(text), ConfigError);
}
