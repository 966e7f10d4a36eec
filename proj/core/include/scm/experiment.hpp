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
#include "scm/channel.hpp"
#include "scm/metrics.hpp"
#include "scm/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace scm {

enum class MetricKind { Sinr, Sir, Lcf, Afbw, Svr };

std::string to_string(MetricKind m);
MetricKind metric_from_string(const std::string& s);

/// Array sizes and channel configurations swept by the profile subcommand.
struct ProfileSweep {
    std::vector<ArrayShape> ue_arrays{{1, 1}};
    std::vector<ArrayShape> gnb_arrays{{1, 1}, {8, 8}, {32, 32}};
    SimplificationConfig baseline = SimplificationConfig::baseline();
    std::vector<SimplificationConfig> configs{SimplificationConfig::baseline(), SimplificationConfig::simplified()};
    std::size_t repetitions = 200;
    std::size_t warmup = 20;

    friend bool operator==(const ProfileSweep&, const ProfileSweep&) = default;
};

struct ExperimentSpec {
    ScenarioConfig scenario;
    SimplificationConfig simplification;
    ArrayShape ue_array{4, 4};
    ArrayShape gnb_array{8, 8};
    int num_drops = 1;
    std::set<MetricKind> metrics{MetricKind::Sinr, MetricKind::Sir, MetricKind::Lcf, MetricKind::Afbw,
                                 MetricKind::Svr};
    std::string output_dir;
    std::string parameter_file; // empty: bundled table
    bool match_large_scale = false;
    InterferenceSum interference = InterferenceSum::Coherent;
    std::vector<double> thresholds; // dB, for lcf.csv / afbw.csv
    bool save_realizations = false;
    ProfileSweep profile;

    /// Throws ConfigError on the first violated invariant.
    void validate() const;
    std::filesystem::path resolved_parameter_file() const;

    friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

/// -20 dB to 40 dB in 1 dB steps.
std::vector<double> default_thresholds();

/// Command-line values that take precedence over the configuration file.
struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> drops;
    std::optional<std::string> clusters;
    std::optional<int> rays;
    std::optional<std::string> ue_array;
    std::optional<std::string> gnb_array;
    std::optional<std::string> output_dir;
};

/// Name of the environment variable that overrides the output directory.
inline constexpr const char* kOutputDirEnv = "SCM_OUT_DIR";

/// Parses the sectioned configuration text. Precedence: CLI flags, then the
/// output-directory environment variable, then the file, then defaults.
ExperimentSpec parse_config_text(std::string_view text, std::string_view origin, const CliOverrides& overrides = {});
ExperimentSpec parse_config(const std::filesystem::path& path, const CliOverrides& overrides = {});

/// Configuration text that parses back to `spec` exactly.
std::string emit_config(const ExperimentSpec& spec);

/// Fixed-point rendering used by every CSV column.
std::string format_fixed(double value, int decimals);

struct RunReport {
    std::vector<std::filesystem::path> files;
    std::vector<std::string> diagnostics; // one per failed drop
    bool partial() const noexcept { return !diagnostics.empty(); }
};

/// Runs every drop and writes the enabled metric files plus manifest.json.
RunReport run_simulate(const ExperimentSpec& spec);

/// Rebuilds the metric files from the drop records stored by a previous
/// simulate run with save_realizations enabled.
RunReport run_metrics(const std::filesystem::path& input_dir, const std::filesystem::path& output_dir);

/// Runs the profile sweep and writes timing.csv and speedup.csv.
RunReport run_profile(const ExperimentSpec& spec);

/// Re-reads the specification embedded in a manifest.json.
ExperimentSpec spec_from_manifest(const std::filesystem::path& manifest);

/// Version string recorded in every manifest.
std::string code_version();

} // namespace scm
