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

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scm {

enum class ChannelState { LoS, NLoS, O2I };

std::string_view to_string(ChannelState s) noexcept;
std::optional<ChannelState> channel_state_from_string(std::string_view s) noexcept;

/// Frequency-dependent coefficient `a + b * log10(fc_GHz)`.
struct FreqCoef {
    double a = 0.0;
    double b = 0.0;

    double at(double fc_ghz) const;
    friend bool operator==(const FreqCoef&, const FreqCoef&) = default;
};

/// Polynomial in one variable, coefficients in increasing order.
struct Polynomial {
    std::vector<double> coefficients;

    double operator()(double x) const;
    friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// Per-state row of the large-scale / small-scale parameter table.
/// Spreads are stored as log10 of degrees (angles) or seconds (delay).
struct StateParams {
    FreqCoef lgDS_mu, lgDS_sigma;
    FreqCoef lgASA_mu, lgASA_sigma;
    FreqCoef lgASD_mu, lgASD_sigma;
    FreqCoef lgZSA_mu, lgZSA_sigma;
    FreqCoef lgZSD_mu, lgZSD_sigma;
    // lgZSD_mu gains `lgZSD_mu_d2d_km * d2D[km]` and is floored at lgZSD_mu_min.
    double lgZSD_mu_d2d_km = 0.0;
    double lgZSD_mu_min = -1e9;
    FreqCoef K_mu, K_sigma;
    FreqCoef SF_sigma;
    FreqCoef r_tau;
    FreqCoef zeta;
    FreqCoef c_ASA, c_ASD, c_ZSA;
    int N_default = 0;
};

/// Normative constants of the channel model, loaded from a versioned text file.
class ParameterTable {
  public:
    static ParameterTable load(const std::filesystem::path& path);
    static ParameterTable parse(std::string_view text, std::string_view origin = "<parameters>");

    /// Throws ConfigError when the state has no section in the file.
    const StateParams& state(ChannelState s) const;
    bool has_state(ChannelState s) const { return states_.contains(s); }

    /// Azimuth / zenith scaling constants for an N-cluster channel, if tabulated.
    std::optional<double> c_phi(int n_clusters) const;
    std::optional<double> c_theta(int n_clusters) const;
    std::vector<int> supported_cluster_counts() const;

    const std::array<double, 20>& ray_offsets() const noexcept { return ray_offsets_; }
    const Polynomial& c_tau_poly() const noexcept { return c_tau_; }
    const Polynomial& c_phi_los_poly() const noexcept { return c_phi_los_; }
    const Polynomial& c_theta_los_poly() const noexcept { return c_theta_los_; }
    double max_azimuth_spread() const noexcept { return max_az_spread_; }
    double max_zenith_spread() const noexcept { return max_zen_spread_; }
    const std::string& version() const noexcept { return version_; }

    // Test hooks: adjust a state row or the scaling tables programmatically.
    StateParams& mutable_state(ChannelState s) { return states_[s]; }
    void set_c_phi(int n, double v) { c_phi_[n] = v; }
    void set_c_theta(int n, double v) { c_theta_[n] = v; }

  private:
    std::map<ChannelState, StateParams> states_;
    std::map<int, double> c_phi_;
    std::map<int, double> c_theta_;
    std::array<double, 20> ray_offsets_{};
    Polynomial c_tau_;
    Polynomial c_phi_los_;
    Polynomial c_theta_los_;
    double max_az_spread_ = 104.0;
    double max_zen_spread_ = 52.0;
    std::string version_;
};

/// Path of the UMa parameter file shipped with the library (set at build time).
std::filesystem::path default_parameter_file();

} // namespace scm
