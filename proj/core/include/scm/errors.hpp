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

#include <stdexcept>
#include <string>

namespace scm {

// Invalid user-supplied configuration (config file, CLI flags, parameter file).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition (dimension mismatch, missing link, ...).
class ContractViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Thrown by the profiler when another profiling session is active in the process.
class ProfilerBusy : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace scm
