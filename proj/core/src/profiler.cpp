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

#include "scm/profiler.hpp"

#include "scm/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

namespace scm {

namespace {

std::atomic<bool> g_profiler_busy{false};

using Clock = PhaseClock::clock;

double to_seconds(Clock::duration d)
{
    return std::chrono::duration<double>(d).count();
}

template <typename T>
void keep_alive(const T& value)
{
    asm volatile("" : : "g"(&value) : "memory");
}

double median_of(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

PhaseStat bootstrap_median(const std::vector<double>& v, const ProfileSettings& s, Rng rng)
{
    PhaseStat st;
    st.median = median_of(v);
    if (s.bootstrap_resamples == 0 || v.size() < 2) {
        st.ci_low = st.ci_high = st.median;
        return st;
    }
    std::vector<double> medians(s.bootstrap_resamples);
    std::vector<double> resample(v.size());
    for (auto& m : medians) {
        for (auto& x : resample) {
            x = v[rng.index(v.size())];
        }
        m = median_of(resample);
    }
    std::sort(medians.begin(), medians.end());
    const double alpha = (1.0 - s.confidence) / 2.0;
    const auto at = [&](double q) {
        const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(medians.size() - 1) + 0.5));
        return medians[std::min(idx, medians.size() - 1)];
    };
    st.ci_low = at(alpha);
    st.ci_high = at(1.0 - alpha);
    return st;
}

std::vector<TimingSample> measure_unlocked(const ProfileWorkload& workload, const SimplificationConfig& config,
                                           ArrayShape ue_shape, ArrayShape gnb_shape, const ProfileSettings& settings,
                                           const ScopeOverhead& overhead)
{
    if (settings.repetitions < 50) {
        throw ConfigError("profiling needs at least 50 repetitions, got " + std::to_string(settings.repetitions));
    }
    if (workload.size() == 0) {
        throw ContractViolation("profile workload has no attached links");
    }
    const ScenarioConfig& sc = workload.scenario();
    config.validate(workload.params());
    const ChannelGenerator gen(workload.params(), config, sc.carrier_frequency, sc.seed, true);
    const double lambda = sc.wavelength();

    // Arrays are set up outside the timed region.
    std::map<double, AntennaArray> gnb_arrays;
    std::vector<AntennaArray> ue_arrays;
    ue_arrays.reserve(workload.size());
    for (std::size_t i = 0; i < workload.size(); ++i) {
        gnb_arrays.try_emplace(workload.gnb_orientation(i), gnb_shape.rows, gnb_shape.cols, lambda, 0.5,
                               workload.gnb_orientation(i));
        ue_arrays.emplace_back(ue_shape.rows, ue_shape.cols, lambda, 0.5, workload.ue_orientation(i));
    }

    std::vector<TimingSample> samples;
    samples.reserve(settings.repetitions);
    PhaseClock clk;
    const std::size_t total = settings.warmup + settings.repetitions;
    for (std::size_t rep = 0; rep < total; ++rep) {
        const std::size_t i = rep % workload.size();
        clk.reset();
        const auto& gnb_array = gnb_arrays.at(workload.gnb_orientation(i));
        const auto t0 = Clock::now();
        const ChannelRealization real =
            gen.generate(workload.link(i), gnb_array, ue_arrays[i], settings.instrument ? &clk : nullptr);
        const auto t1 = Clock::now();
        keep_alive(real);
        if (rep < settings.warmup) {
            continue;
        }
        TimingSample s;
        s.computations = std::max(0.0, clk.seconds(Phase::Computations) -
                                           static_cast<double>(clk.scopes(Phase::Computations)) * overhead.recorded);
        s.random_variables =
            std::max(0.0, clk.seconds(Phase::RandomVariables) -
                              static_cast<double>(clk.scopes(Phase::RandomVariables)) * overhead.recorded);
        s.total = std::max(0.0, to_seconds(t1 - t0) - static_cast<double>(clk.scopes()) * overhead.wall);
        s.total = std::max(s.total, s.computations + s.random_variables);
        samples.push_back(s);
    }
    return samples;
}

} // namespace

ProfilerSession::ProfilerSession()
{
    bool expected = false;
    if (!g_profiler_busy.compare_exchange_strong(expected, true)) {
        throw ProfilerBusy("another profiler session is already running in this process");
    }
}

ProfilerSession::~ProfilerSession()
{
    g_profiler_busy.store(false);
}

ProfileWorkload::ProfileWorkload(const ScenarioConfig& scenario, const ParameterTable& params, std::uint64_t drop)
    : scenario_(scenario), params_(&params)
{
    Rng rng = Rng::derive(scenario.seed, StreamDomain::Profiling, {drop});
    const Deployment d = drop_scenario(scenario, params, rng);
    for (int ue = 0; ue < d.num_ues(); ++ue) {
        const int g = d.attachment[ue];
        LinkContext ctx;
        ctx.id = {drop, g, ue};
        ctx.state = d.link(g, ue).state;
        ctx.geometry = LinkGeometry::between(d.gnb_positions[g], d.ue_positions[ue]);
        links_.push_back(ctx);
        ue_azimuth_.push_back(d.ue_orientations[ue]);
        gnb_azimuth_.push_back(d.sector_azimuths[g]);
    }
}

ScopeOverhead calibrate_scope_overhead(std::size_t iterations)
{
    PhaseClock clk;
    const auto t0 = Clock::now();
    for (std::size_t i = 0; i < iterations; ++i) {
        ScopedPhase scope(&clk, Phase::Computations);
    }
    const auto t1 = Clock::now();
    ScopeOverhead o;
    const auto n = static_cast<double>(std::max<std::size_t>(iterations, 1));
    o.wall = to_seconds(t1 - t0) / n;
    o.recorded = clk.seconds(Phase::Computations) / n;
    return o;
}

double timer_resolution()
{
    auto best = Clock::duration::max();
    for (int trial = 0; trial < 1000; ++trial) {
        const auto a = Clock::now();
        auto b = Clock::now();
        while (b == a) {
            b = Clock::now();
        }
        best = std::min(best, b - a);
    }
    return std::max(to_seconds(best), std::chrono::duration<double>(Clock::duration(1)).count());
}

std::vector<TimingSample> measure_generation(const ProfileWorkload& workload, const SimplificationConfig& config,
                                             ArrayShape ue_array, ArrayShape gnb_array,
                                             const ProfileSettings& settings)
{
    ProfilerSession session;
    const ScopeOverhead overhead = settings.instrument ? calibrate_scope_overhead() : ScopeOverhead{};
    return measure_unlocked(workload, config, ue_array, gnb_array, settings, overhead);
}

PhaseTiming summarize_timings(const std::vector<TimingSample>& samples, const ProfileSettings& settings,
                              std::uint64_t seed)
{
    if (samples.empty()) {
        throw ContractViolation("summarize_timings: no samples");
    }
    std::vector<double> comp;
    std::vector<double> rv;
    std::vector<double> other;
    std::vector<double> total;
    for (const auto& s : samples) {
        comp.push_back(s.computations);
        rv.push_back(s.random_variables);
        other.push_back(s.other());
        total.push_back(s.total);
    }
    PhaseTiming t;
    t.repetitions = samples.size();
    t.computations = bootstrap_median(comp, settings, Rng::derive(seed, StreamDomain::Bootstrap, {0}));
    t.random_variables = bootstrap_median(rv, settings, Rng::derive(seed, StreamDomain::Bootstrap, {1}));
    t.other = bootstrap_median(other, settings, Rng::derive(seed, StreamDomain::Bootstrap, {2}));
    t.total = bootstrap_median(total, settings, Rng::derive(seed, StreamDomain::Bootstrap, {3}));
    // Report "other" as the residual of the medians so the three phases add up to the total.
    t.other.median = std::max(0.0, t.total.median - t.computations.median - t.random_variables.median);
    t.mean_total = std::accumulate(total.begin(), total.end(), 0.0) / static_cast<double>(total.size());

    const double resolution = timer_resolution();
    double smallest = t.total.median;
    for (double v : {t.computations.median, t.random_variables.median, t.other.median}) {
        if (v > 0.0) {
            smallest = std::min(smallest, v);
        }
    }
    if (settings.instrument && resolution > 0.01 * smallest) {
        t.reliable = false;
        char buf[160];
        std::snprintf(buf, sizeof buf, "timer resolution %.3g s exceeds 1%% of the smallest phase (%.3g s)",
                      resolution, smallest);
        t.diagnostic = buf;
    }
    return t;
}

PhaseTiming profile_generation(const ProfileWorkload& workload, const SimplificationConfig& config,
                               ArrayShape ue_array, ArrayShape gnb_array, const ProfileSettings& settings)
{
    const auto samples = measure_generation(workload, config, ue_array, gnb_array, settings);
    return summarize_timings(samples, settings, workload.scenario().seed);
}

std::vector<SpeedupRow> speedup_table(const ProfileWorkload& workload, const SimplificationConfig& baseline,
                                      const std::vector<SimplificationConfig>& candidates,
                                      const std::vector<ArrayShape>& ue_sizes,
                                      const std::vector<ArrayShape>& gnb_sizes, const ProfileSettings& settings)
{
    if (std::find(candidates.begin(), candidates.end(), baseline) == candidates.end()) {
        throw ConfigError("speedup table: baseline " + baseline.label() + " is not among the candidates");
    }
    ProfilerSession session;
    const ScopeOverhead overhead = settings.instrument ? calibrate_scope_overhead() : ScopeOverhead{};
    std::vector<SpeedupRow> rows;
    for (const auto& ue : ue_sizes) {
        for (const auto& gnb : gnb_sizes) {
            const std::size_t first = rows.size();
            double baseline_mean = 0.0;
            for (const auto& cfg : candidates) {
                const auto samples = measure_unlocked(workload, cfg, ue, gnb, settings, overhead);
                SpeedupRow row;
                row.ue_elements = ue.size();
                row.gnb_elements = gnb.size();
                row.ue_array = ue;
                row.gnb_array = gnb;
                row.config = cfg;
                row.timing = summarize_timings(samples, settings, workload.scenario().seed);
                row.mean_time = row.timing.mean_total;
                if (cfg == baseline) {
                    baseline_mean = row.mean_time;
                }
                rows.push_back(row);
            }
            for (std::size_t k = first; k < rows.size(); ++k) {
                rows[k].speedup = rows[k].config == baseline ? 1.0 : baseline_mean / rows[k].mean_time;
            }
        }
    }
    return rows;
}

} // namespace scm
