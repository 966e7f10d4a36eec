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
#include "scm/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace scm {

/// Summary of one phase: median over repetitions with a bootstrap interval.
struct PhaseStat {
    double median = 0.0; // s
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct PhaseTiming {
    PhaseStat computations;
    PhaseStat random_variables;
    PhaseStat other;
    PhaseStat total;
    double mean_total = 0.0; // s, uncorrected for nothing but scope overhead
    std::size_t repetitions = 0;
    bool reliable = true;    // false when the timer is too coarse for the smallest phase
    std::string diagnostic;
};

/// Raw per-repetition timings (seconds, overhead-corrected).
struct TimingSample {
    double computations = 0.0;
    double random_variables = 0.0;
    double total = 0.0;
    double other() const noexcept { return total - computations - random_variables; }
};

struct ProfileSettings {
    std::size_t repetitions = 200;
    std::size_t warmup = 20;
    std::size_t bootstrap_resamples = 1000;
    double confidence = 0.95;
    bool instrument = true; // false times the bare generation without phase scopes
};

/// Seeded deployment whose attached links are replayed round-robin, so every
/// configuration sees the same link sequence.
class ProfileWorkload {
  public:
    ProfileWorkload(const ScenarioConfig& scenario, const ParameterTable& params, std::uint64_t drop = 0);

    std::size_t size() const noexcept { return links_.size(); }
    const LinkContext& link(std::size_t i) const { return links_[i % links_.size()]; }
    double ue_orientation(std::size_t i) const { return ue_azimuth_[i % links_.size()]; }
    double gnb_orientation(std::size_t i) const { return gnb_azimuth_[i % links_.size()]; }
    const ScenarioConfig& scenario() const noexcept { return scenario_; }
    const ParameterTable& params() const noexcept { return *params_; }

  private:
    ScenarioConfig scenario_;
    const ParameterTable* params_;
    std::vector<LinkContext> links_;
    std::vector<double> ue_azimuth_;
    std::vector<double> gnb_azimuth_;
};

/// Cost of one empty phase scope: wall time and the part the clock records.
struct ScopeOverhead {
    double wall = 0.0;     // s per scope
    double recorded = 0.0; // s per scope attributed to the phase
};

ScopeOverhead calibrate_scope_overhead(std::size_t iterations = 200000);

/// Smallest observable step of the monotonic clock, seconds.
double timer_resolution();

/// Times `settings.repetitions` channel generations after `settings.warmup`
/// discarded ones. Throws ProfilerBusy if another session is active and
/// ConfigError for fewer than 50 repetitions.
std::vector<TimingSample> measure_generation(const ProfileWorkload& workload, const SimplificationConfig& config,
                                             ArrayShape ue_array, ArrayShape gnb_array,
                                             const ProfileSettings& settings);

PhaseTiming summarize_timings(const std::vector<TimingSample>& samples, const ProfileSettings& settings,
                              std::uint64_t seed);

PhaseTiming profile_generation(const ProfileWorkload& workload, const SimplificationConfig& config,
                               ArrayShape ue_array, ArrayShape gnb_array, const ProfileSettings& settings);

struct SpeedupRow {
    int ue_elements = 0;
    int gnb_elements = 0;
    ArrayShape ue_array;
    ArrayShape gnb_array;
    SimplificationConfig config;
    PhaseTiming timing;
    double mean_time = 0.0;
    double speedup = 0.0;
};

/// One row per (ue, gnb, config), looping configs innermost; speedup is the
/// baseline's mean time over the candidate's, and exactly 1 for the baseline.
std::vector<SpeedupRow> speedup_table(const ProfileWorkload& workload, const SimplificationConfig& baseline,
                                      const std::vector<SimplificationConfig>& candidates,
                                      const std::vector<ArrayShape>& ue_sizes,
                                      const std::vector<ArrayShape>& gnb_sizes, const ProfileSettings& settings);

/// Holds the process-wide profiler lock for its lifetime.
class ProfilerSession {
  public:
    ProfilerSession();
    ~ProfilerSession();
    ProfilerSession(const ProfilerSession&) = delete;
    ProfilerSession& operator=(const ProfilerSession&) = delete;
};

} // namespace scm
