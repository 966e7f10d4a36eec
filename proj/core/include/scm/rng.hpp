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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace scm {

/// Named random sub-stream domains. Values are part of the stream key and
/// therefore of the reproducibility contract: never renumber.
enum class StreamDomain : std::uint64_t {
    Scenario = 1,
    Scheduling = 2,
    LargeScale = 10,
    Delays = 11,
    Powers = 12,
    Angles = 13,
    Coupling = 14,
    Phases = 15,
    Profiling = 20,
    Bootstrap = 21,
};

/// SplitMix64 finalizer; used to fold stream keys into a 64-bit seed.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic random stream. Every stream is identified by the master seed
/// plus a tuple of counters; two streams with different keys are independent
/// for all practical purposes and never share state.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng derive(std::uint64_t master_seed, StreamDomain domain,
                      std::initializer_list<std::uint64_t> counters = {})
    {
        std::uint64_t h = mix64(master_seed);
        h = mix64(h ^ static_cast<std::uint64_t>(domain));
        for (auto c : counters) {
            h = mix64(h ^ mix64(c + 0x632be59bd9b4e019ULL));
        }
        return Rng(h);
    }

    /// Uniform in [0, 1).
    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

    double uniform(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    /// Uniform in the open interval (0, 1); safe as a log() argument.
    double uniform_open()
    {
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        return u;
    }

    double normal(double mean = 0.0, double stddev = 1.0)
    {
        if (stddev == 0.0) {
            return mean;
        }
        return std::normal_distribution<double>(mean, stddev)(engine_);
    }

    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n)
    {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

    std::mt19937_64& engine() noexcept { return engine_; }

  private:
    std::mt19937_64 engine_;
};

} // namespace scm
