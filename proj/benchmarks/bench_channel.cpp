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

#include "scm/antenna_array.hpp"
#include "scm/channel.hpp"
#include "scm/metrics.hpp"
#include "scm/parameter_table.hpp"
#include "scm/phase_clock.hpp"
#include "scm/scenario.hpp"

#include <benchmark/benchmark.h>

using namespace scm;

namespace {

const ParameterTable& table()
{
    static const ParameterTable t = ParameterTable::load(default_parameter_file());
    return t;
}

LinkContext link_for(std::int64_t i)
{
    LinkContext ctx;
    ctx.id = {0, static_cast<int>(i % 21), static_cast<int>(i % 210)};
    ctx.state = static_cast<ChannelState>(i % 3);
    ctx.geometry = LinkGeometry::between({0, 0, 25}, {60.0 + static_cast<double>(i % 50) * 5.0, 20.0, 1.5});
    return ctx;
}

// Arguments: gNB array side, simplified (0/1), instrumented (0/1).
void BM_Generate(benchmark::State& state)
{
    const int side = static_cast<int>(state.range(0));
    const auto cfg = state.range(1) ? SimplificationConfig::simplified() : SimplificationConfig::baseline();
    const bool instrument = state.range(2) != 0;
    const ChannelGenerator gen(table(), cfg, 30e9, 1, true);
    const AntennaArray gnb(side, side, gen.wavelength());
    const AntennaArray ue(1, 1, gen.wavelength());
    PhaseClock clock;
    std::int64_t i = 0;
    for (auto _ : state) {
        clock.reset();
        auto r = gen.generate(link_for(i++), gnb, ue, instrument ? &clock : nullptr);
        benchmark::DoNotOptimize(r);
    }
    state.SetLabel(cfg.label() + (instrument ? " instrumented" : ""));
}

void BM_SvdBeamforming(benchmark::State& state)
{
    const ChannelGenerator gen(table(), SimplificationConfig::baseline(), 30e9, 1);
    const auto side = static_cast<int>(state.range(0));
    const AntennaArray gnb(side, side, gen.wavelength());
    const AntennaArray ue(4, 4, gen.wavelength());
    const Eigen::MatrixXcd h = gen.generate(link_for(1), gnb, ue).narrowband();
    for (auto _ : state) {
        benchmark::DoNotOptimize(svd_beamforming(h));
    }
}

} // namespace

BENCHMARK(BM_Generate)
    ->ArgsProduct({{1, 8, 32}, {0, 1}, {0, 1}})
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SvdBeamforming)->Arg(8)->Arg(32)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
