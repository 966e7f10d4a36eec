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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scm {

/// One `key = value` line of a sectioned key-value text file. A key may carry
/// an integer subscript (`C_phi[12] = 1.146`).
struct KvEntry {
    std::string section;
    std::string key;
    std::optional<int> index;
    std::string value;
    int line = 0;
};

/// Parses the sectioned key-value format shared by configuration and
/// parameter files: `#` starts a comment, `[name]` opens a section, blank
/// lines are ignored. Throws ConfigError with the offending line number.
std::vector<KvEntry> parse_kv_text(std::string_view text, std::string_view origin = "<text>");
std::vector<KvEntry> parse_kv_file(const std::filesystem::path& path);

std::string trim(std::string_view s);

/// Comma-separated list of doubles. Throws ConfigError naming `what` on failure.
std::vector<double> parse_number_list(std::string_view value, std::string_view what);
double parse_number(std::string_view value, std::string_view what);
long long parse_integer(std::string_view value, std::string_view what);
bool parse_bool(std::string_view value, std::string_view what);

} // namespace scm
