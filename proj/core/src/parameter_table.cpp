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

#include "scm/parameter_table.hpp"

#include "scm/errors.hpp"
#include "scm/kv_file.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <set>
#include <unordered_map>

#ifndef SCM_DATA_DIR
#define SCM_DATA_DIR "."
#endif

namespace scm {

std::string_view to_string(ChannelState s) noexcept
{
    switch (s) {
    case ChannelState::LoS:
        return "LoS";
    case ChannelState::NLoS:
        return "NLoS";
    case ChannelState::O2I:
        return "O2I";
    }
    return "?";
}

std::optional<ChannelState> channel_state_from_string(std::string_view s) noexcept
{
    if (s == "LoS") {
        return ChannelState::LoS;
    }
    if (s == "NLoS") {
        return ChannelState::NLoS;
    }
    if (s == "O2I") {
        return ChannelState::O2I;
    }
    return std::nullopt;
}

double FreqCoef::at(double fc_ghz) const
{
    return b == 0.0 ? a : a + b * std::log10(fc_ghz);
}

double Polynomial::operator()(double x) const
{
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

namespace {

std::string where(const std::string& origin, const KvEntry& e)
{
    return origin + ":" + std::to_string(e.line) + ": ";
}

FreqCoef parse_coef(const KvEntry& e, const std::string& origin)
{
    try {
        const auto v = parse_number_list(e.value, e.key);
        if (v.size() == 1) {
            return {v[0], 0.0};
        }
        if (v.size() == 2) {
            return {v[0], v[1]};
        }
    } catch (const ConfigError& err) {
        throw ConfigError(where(origin, e) + err.what());
    }
    throw ConfigError(where(origin, e) + e.key + ": expected 'a' or 'a, b'");
}

using StateSetter = std::function<void(StateParams&, const KvEntry&, const std::string&)>;

const std::unordered_map<std::string, StateSetter>& state_keys()
{
    static const std::unordered_map<std::string, StateSetter> keys = [] {
        std::unordered_map<std::string, StateSetter> m;
        auto coef = [&m](const char* name, FreqCoef StateParams::*field) {
            m[name] = [field](StateParams& p, const KvEntry& e, const std::string& o) {
                p.*field = parse_coef(e, o);
            };
        };
        coef("lgDS_mu", &StateParams::lgDS_mu);
        coef("lgDS_sigma", &StateParams::lgDS_sigma);
        coef("lgASA_mu", &StateParams::lgASA_mu);
        coef("lgASA_sigma", &StateParams::lgASA_sigma);
        coef("lgASD_mu", &StateParams::lgASD_mu);
        coef("lgASD_sigma", &StateParams::lgASD_sigma);
        coef("lgZSA_mu", &StateParams::lgZSA_mu);
        coef("lgZSA_sigma", &StateParams::lgZSA_sigma);
        coef("lgZSD_mu", &StateParams::lgZSD_mu);
        coef("lgZSD_sigma", &StateParams::lgZSD_sigma);
        coef("K_mu", &StateParams::K_mu);
        coef("K_sigma", &StateParams::K_sigma);
        coef("SF_sigma", &StateParams::SF_sigma);
        coef("r_tau", &StateParams::r_tau);
        coef("zeta", &StateParams::zeta);
        coef("c_ASA", &StateParams::c_ASA);
        coef("c_ASD", &StateParams::c_ASD);
        coef("c_ZSA", &StateParams::c_ZSA);
        m["lgZSD_mu_d2d_km"] = [](StateParams& p, const KvEntry& e, const std::string& o) {
            p.lgZSD_mu_d2d_km = parse_coef(e, o).a;
        };
        m["lgZSD_mu_min"] = [](StateParams& p, const KvEntry& e, const std::string& o) {
            p.lgZSD_mu_min = parse_coef(e, o).a;
        };
        m["N_default"] = [](StateParams& p, const KvEntry& e, const std::string& o) {
            try {
                p.N_default = static_cast<int>(parse_integer(e.value, e.key));
            } catch (const ConfigError& err) {
                throw ConfigError(where(o, e) + err.what());
            }
        };
        return m;
    }();
    return keys;
}

const std::set<std::string> kRequiredStateKeys = {
    "lgDS_mu", "lgDS_sigma", "lgASA_mu", "lgASA_sigma", "lgASD_mu", "lgASD_sigma",
    "lgZSA_mu", "lgZSA_sigma", "lgZSD_mu", "lgZSD_sigma", "K_mu", "K_sigma", "SF_sigma", "r_tau", "zeta",
    "c_ASA", "c_ASD", "c_ZSA", "N_default"};

} // namespace

ParameterTable ParameterTable::parse(std::string_view text, std::string_view origin_view)
{
    const std::string origin(origin_view);
    ParameterTable table;
    std::map<ChannelState, std::set<std::string>> seen;
    bool have_offsets = false;

    for (const auto& e : parse_kv_text(text, origin)) {
        const auto fail = [&](const std::string& msg) { throw ConfigError(where(origin, e) + msg); };
        if (e.section.empty() || e.section == "global") {
            if (e.key == "version") {
                table.version_ = e.value;
            } else if (e.key == "C_phi" || e.key == "C_theta") {
                if (!e.index || *e.index <= 0) {
                    fail(e.key + " needs a positive cluster-count subscript");
                }
                const double v = parse_coef(e, origin).a;
                (e.key == "C_phi" ? table.c_phi_ : table.c_theta_)[*e.index] = v;
            } else if (e.key == "ray_offsets") {
                const auto v = parse_number_list(e.value, e.key);
                if (v.size() != 20) {
                    fail("ray_offsets needs exactly 20 entries, got " + std::to_string(v.size()));
                }
                std::copy(v.begin(), v.end(), table.ray_offsets_.begin());
                have_offsets = true;
            } else if (e.key == "C_tau_poly") {
                table.c_tau_.coefficients = parse_number_list(e.value, e.key);
            } else if (e.key == "C_phi_los_poly") {
                table.c_phi_los_.coefficients = parse_number_list(e.value, e.key);
            } else if (e.key == "C_theta_los_poly") {
                table.c_theta_los_.coefficients = parse_number_list(e.value, e.key);
            } else if (e.key == "AS_max") {
                table.max_az_spread_ = parse_coef(e, origin).a;
            } else if (e.key == "ZS_max") {
                table.max_zen_spread_ = parse_coef(e, origin).a;
            } else {
                fail("unknown global key '" + e.key + "'");
            }
            continue;
        }
        const auto state = channel_state_from_string(e.section);
        if (!state) {
            fail("unknown section '" + e.section + "' (expected LoS, NLoS or O2I)");
        }
        const auto& keys = state_keys();
        const auto it = keys.find(e.key);
        if (it == keys.end() || e.index) {
            fail("unknown key '" + e.key + "' in section [" + e.section + "]");
        }
        it->second(table.states_[*state], e, origin);
        seen[*state].insert(e.key);
    }

    for (const auto& [state, keys] : seen) {
        for (const auto& required : kRequiredStateKeys) {
            if (!keys.contains(required)) {
                throw ConfigError(origin + ": section [" + std::string(to_string(state)) +
                                  "] is missing required key '" + required + "'");
            }
        }
    }
    if (!have_offsets) {
        throw ConfigError(origin + ": missing ray_offsets table");
    }
    if (table.c_tau_.coefficients.empty()) {
        table.c_tau_.coefficients = {1.0};
    }
    if (table.c_phi_los_.coefficients.empty()) {
        table.c_phi_los_.coefficients = {1.0};
    }
    if (table.c_theta_los_.coefficients.empty()) {
        table.c_theta_los_.coefficients = {1.0};
    }
    return table;
}

ParameterTable ParameterTable::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open parameter file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.string());
}

const StateParams& ParameterTable::state(ChannelState s) const
{
    const auto it = states_.find(s);
    if (it == states_.end()) {
        throw ConfigError("parameter table has no section for state " + std::string(to_string(s)));
    }
    return it->second;
}

std::optional<double> ParameterTable::c_phi(int n) const
{
    if (const auto it = c_phi_.find(n); it != c_phi_.end()) {
        return it->second;
    }
    return std::nullopt;
}

std::optional<double> ParameterTable::c_theta(int n) const
{
    if (const auto it = c_theta_.find(n); it != c_theta_.end()) {
        return it->second;
    }
    return std::nullopt;
}

std::vector<int> ParameterTable::supported_cluster_counts() const
{
    std::vector<int> out;
    for (const auto& [n, v] : c_phi_) {
        if (c_theta_.contains(n)) {
            out.push_back(n);
        }
    }
    return out;
}

std::filesystem::path default_parameter_file()
{
    if (const char* env = std::getenv("SCM_PARAMETER_FILE"); env != nullptr && *env != '\0') {
        return env;
    }
    return std::filesystem::path(SCM_DATA_DIR) / "uma_params.txt";
}

} // namespace scm
