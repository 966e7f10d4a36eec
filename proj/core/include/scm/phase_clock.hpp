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
#include <chrono>
#include <cstdint>

namespace scm {

/// Instrumented phases of channel generation. Anything not enclosed in a
/// phase scope is attributed to "other" by the profiler.
enum class Phase : std::size_t {
    Computations = 0,    // steering vectors and their combination into H_n
    RandomVariables = 1, // every stochastic draw
};

inline constexpr std::size_t kNumPhases = 2;

/// Accumulates monotonic wall time per phase.
class PhaseClock {
  public:
    using clock = std::chrono::steady_clock;

    void reset() noexcept
    {
        elapsed_.fill(clock::duration::zero());
        scopes_.fill(0);
    }

    void add(Phase p, clock::duration d) noexcept
    {
        elapsed_[static_cast<std::size_t>(p)] += d;
        ++scopes_[static_cast<std::size_t>(p)];
    }

    clock::duration elapsed(Phase p) const noexcept { return elapsed_[static_cast<std::size_t>(p)]; }
    double seconds(Phase p) const noexcept { return std::chrono::duration<double>(elapsed(p)).count(); }
    std::uint64_t scopes(Phase p) const noexcept { return scopes_[static_cast<std::size_t>(p)]; }
    std::uint64_t scopes() const noexcept { return scopes_[0] + scopes_[1]; }

  private:
    std::array<clock::duration, kNumPhases> elapsed_{};
    std::array<std::uint64_t, kNumPhases> scopes_{};
};

/// RAII phase scope; a null clock makes it free.
class ScopedPhase {
  public:
    ScopedPhase(PhaseClock* clock, Phase phase) noexcept : clock_(clock), phase_(phase)
    {
        if (clock_ != nullptr) {
            start_ = PhaseClock::clock::now();
        }
    }

    ~ScopedPhase()
    {
        if (clock_ != nullptr) {
            clock_->add(phase_, PhaseClock::clock::now() - start_);
        }
    }

    ScopedPhase(const ScopedPhase&) = delete;
    ScopedPhase& operator=(const ScopedPhase&) = delete;

  private:
    PhaseClock* clock_;
    Phase phase_;
    PhaseClock::clock::time_point start_{};
};

} // namespace scm
