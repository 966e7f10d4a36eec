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

#include "scm/kv_file.hpp"

#include "scm/errors.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace scm {

std::string trim(std::string_view s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

namespace {

std::string located(std::string_view origin, int line, const std::string& msg)
{
    std::ostringstream os;
    os << origin << ":" << line << ": " << msg;
    return os.str();
}

bool valid_key(std::string_view key)
{
    if (key.empty()) {
        return false;
    }
    for (char c : key) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) {
            return false;
        }
    }
    return true;
}

} // namespace

std::vector<KvEntry> parse_kv_text(std::string_view text, std::string_view origin)
{
    std::vector<KvEntry> entries;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        const std::string line = trim(raw);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(located(origin, line_no, "unterminated section header"));
            }
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (!valid_key(section)) {
                throw ConfigError(located(origin, line_no, "invalid section name '" + section + "'"));
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(located(origin, line_no, "expected 'key = value'"));
        }
        KvEntry entry;
        entry.section = section;
        entry.line = line_no;
        entry.value = trim(std::string_view(line).substr(eq + 1));
        std::string key = trim(std::string_view(line).substr(0, eq));
        if (const auto lb = key.find('['); lb != std::string::npos) {
            if (key.back() != ']') {
                throw ConfigError(located(origin, line_no, "malformed subscript in key '" + key + "'"));
            }
            const std::string idx = key.substr(lb + 1, key.size() - lb - 2);
            int v = 0;
            const auto [p, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), v);
            if (ec != std::errc{} || p != idx.data() + idx.size()) {
                throw ConfigError(located(origin, line_no, "non-integer subscript in key '" + key + "'"));
            }
            entry.index = v;
            key = trim(std::string_view(key).substr(0, lb));
        }
        if (!valid_key(key)) {
            throw ConfigError(located(origin, line_no, "invalid key '" + key + "'"));
        }
        entry.key = std::move(key);
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::vector<KvEntry> parse_kv_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_kv_text(buf.str(), path.string());
}

double parse_number(std::string_view value, std::string_view what)
{
    const std::string s = trim(value);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || p != s.data() + s.size()) {
        throw ConfigError(std::string(what) + ": expected a number, got '" + s + "'");
    }
    return v;
}

long long parse_integer(std::string_view value, std::string_view what)
{
    const std::string s = trim(value);
    long long v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || p != s.data() + s.size()) {
        throw ConfigError(std::string(what) + ": expected an integer, got '" + s + "'");
    }
    return v;
}

bool parse_bool(std::string_view value, std::string_view what)
{
    const std::string s = trim(value);
    if (s == "true" || s == "1" || s == "yes") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no") {
        return false;
    }
    throw ConfigError(std::string(what) + ": expected a boolean, got '" + s + "'");
}

std::vector<double> parse_number_list(std::string_view value, std::string_view what)
{
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        const auto comma = value.find(',', pos);
        const auto item = value.substr(pos, comma == std::string_view::npos ? value.size() - pos : comma - pos);
        out.push_back(parse_number(item, what));
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

} // namespace scm
