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

#include "scm/experiment.hpp"

#include "scm/drop.hpp"
#include "scm/errors.hpp"
#include "scm/kv_file.hpp"
#include "scm/parameter_table.hpp"
#include "scm/profiler.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#ifndef SCM_VERSION
#define SCM_VERSION "0.0.0"
#endif

namespace scm {

namespace fs = std::filesystem;

std::string code_version()
{
    return SCM_VERSION;
}

std::string to_string(MetricKind m)
{
    switch (m) {
    case MetricKind::Sinr:
        return "sinr";
    case MetricKind::Sir:
        return "sir";
    case MetricKind::Lcf:
        return "lcf";
    case MetricKind::Afbw:
        return "afbw";
    case MetricKind::Svr:
        return "svr";
    }
    return "?";
}

MetricKind metric_from_string(const std::string& s)
{
    for (auto m : {MetricKind::Sinr, MetricKind::Sir, MetricKind::Lcf, MetricKind::Afbw, MetricKind::Svr}) {
        if (to_string(m) == s) {
            return m;
        }
    }
    throw ConfigError("unknown metric '" + s + "' (expected sinr, sir, lcf, afbw or svr)");
}

std::vector<double> default_thresholds()
{
    std::vector<double> t;
    for (int v = -20; v <= 40; ++v) {
        t.push_back(v);
    }
    return t;
}

void ExperimentSpec::validate() const
{
    scenario.validate();
    if (num_drops < 1) {
        throw ConfigError("drops must be >= 1");
    }
    if (output_dir.empty()) {
        throw ConfigError("missing required key 'output_dir' (set it in [run], with --out or with " +
                          std::string(kOutputDirEnv) + ")");
    }
    if (ue_array.size() < 1 || gnb_array.size() < 1) {
        throw ConfigError("antenna arrays need at least one element");
    }
    const auto pf = resolved_parameter_file();
    if (!fs::exists(pf)) {
        throw ConfigError("parameter file " + pf.string() + " does not exist");
    }
    const ParameterTable params = ParameterTable::load(pf);
    simplification.validate(params);
    for (const auto& c : profile.configs) {
        c.validate(params);
    }
    if (profile.repetitions < 50) {
        throw ConfigError("profile repetitions must be >= 50");
    }
}

fs::path ExperimentSpec::resolved_parameter_file() const
{
    return parameter_file.empty() ? default_parameter_file() : fs::path(parameter_file);
}

std::string format_fixed(double value, int decimals)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s(buf);
    if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1); // no negative zero
    }
    return s;
}

namespace {

std::string shortest(double v)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::vector<std::string> split_list(const std::string& value)
{
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

// "L/N/O:M"
SimplificationConfig parse_config_token(const std::string& token)
{
    const auto colon = token.find(':');
    if (colon == std::string::npos) {
        throw ConfigError("expected 'L/N/O:M', got '" + token + "'");
    }
    SimplificationConfig c;
    parse_clusters(trim(token.substr(0, colon)), c);
    c.m_rays = static_cast<int>(parse_integer(trim(token.substr(colon + 1)), "rays"));
    return c;
}

std::string config_token(const SimplificationConfig& c)
{
    return c.clusters_string() + ":" + std::to_string(c.m_rays);
}

template <typename T, typename F>
std::string join(const std::vector<T>& v, F f)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + f(v[i]);
    }
    return s;
}

std::string interference_name(InterferenceSum m)
{
    return m == InterferenceSum::Coherent ? "coherent" : "incoherent";
}

using Setter = std::function<void(ExperimentSpec&, const std::string&)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        const auto real = [&t](const std::string& key, double ScenarioConfig::*field) {
            t["scenario." + key] = [field, key](ExperimentSpec& s, const std::string& v) {
                s.scenario.*field = parse_number(v, key);
            };
        };
        const auto integer = [&t](const std::string& key, int ScenarioConfig::*field) {
            t["scenario." + key] = [field, key](ExperimentSpec& s, const std::string& v) {
                s.scenario.*field = static_cast<int>(parse_integer(v, key));
            };
        };
        real("inter_site_distance", &ScenarioConfig::inter_site_distance);
        integer("num_sites", &ScenarioConfig::num_sites);
        integer("sectors_per_site", &ScenarioConfig::sectors_per_site);
        real("gnb_height", &ScenarioConfig::gnb_height);
        real("ue_height", &ScenarioConfig::ue_height);
        integer("num_ues", &ScenarioConfig::num_ues);
        real("indoor_fraction", &ScenarioConfig::indoor_fraction);
        real("carrier_frequency", &ScenarioConfig::carrier_frequency);
        real("bandwidth", &ScenarioConfig::bandwidth);
        real("subcarrier_spacing", &ScenarioConfig::subcarrier_spacing);
        real("tx_power", &ScenarioConfig::tx_power);
        real("noise_figure", &ScenarioConfig::noise_figure);
        real("o2i_penetration_loss", &ScenarioConfig::o2i_penetration_loss);
        real("o2i_indoor_loss_per_m", &ScenarioConfig::o2i_indoor_loss_per_m);
        real("o2i_max_indoor_distance", &ScenarioConfig::o2i_max_indoor_distance);
        real("min_ue_distance", &ScenarioConfig::min_ue_distance);
        t["scenario.seed"] = [](ExperimentSpec& s, const std::string& v) {
            const auto n = parse_integer(v, "seed");
            if (n < 0) {
                throw ConfigError("seed must be non-negative");
            }
            s.scenario.seed = static_cast<std::uint64_t>(n);
        };

        t["channel.clusters"] = [](ExperimentSpec& s, const std::string& v) { parse_clusters(v, s.simplification); };
        t["channel.rays"] = [](ExperimentSpec& s, const std::string& v) {
            s.simplification.m_rays = static_cast<int>(parse_integer(v, "rays"));
        };
        t["channel.ue_array"] = [](ExperimentSpec& s, const std::string& v) { s.ue_array = parse_array_shape(v); };
        t["channel.gnb_array"] = [](ExperimentSpec& s, const std::string& v) { s.gnb_array = parse_array_shape(v); };
        t["channel.parameter_file"] = [](ExperimentSpec& s, const std::string& v) { s.parameter_file = v; };
        t["channel.match_large_scale"] = [](ExperimentSpec& s, const std::string& v) {
            s.match_large_scale = parse_bool(v, "match_large_scale");
        };

        t["run.drops"] = [](ExperimentSpec& s, const std::string& v) {
            s.num_drops = static_cast<int>(parse_integer(v, "drops"));
        };
        t["run.metrics"] = [](ExperimentSpec& s, const std::string& v) {
            s.metrics.clear();
            for (const auto& m : split_list(v)) {
                s.metrics.insert(metric_from_string(m));
            }
        };
        t["run.output_dir"] = [](ExperimentSpec& s, const std::string& v) { s.output_dir = v; };
        t["run.interference"] = [](ExperimentSpec& s, const std::string& v) {
            if (v == "coherent") {
                s.interference = InterferenceSum::Coherent;
            } else if (v == "incoherent") {
                s.interference = InterferenceSum::Incoherent;
            } else {
                throw ConfigError("interference must be 'coherent' or 'incoherent', got '" + v + "'");
            }
        };
        t["run.thresholds"] = [](ExperimentSpec& s, const std::string& v) {
            s.thresholds = parse_number_list(v, "thresholds");
        };
        t["run.save_realizations"] = [](ExperimentSpec& s, const std::string& v) {
            s.save_realizations = parse_bool(v, "save_realizations");
        };

        const auto shapes = [](const std::string& v) {
            std::vector<ArrayShape> out;
            for (const auto& item : split_list(v)) {
                out.push_back(parse_array_shape(item));
            }
            if (out.empty()) {
                throw ConfigError("array list is empty");
            }
            return out;
        };
        t["profile.ue_arrays"] = [shapes](ExperimentSpec& s, const std::string& v) { s.profile.ue_arrays = shapes(v); };
        t["profile.gnb_arrays"] = [shapes](ExperimentSpec& s, const std::string& v) {
            s.profile.gnb_arrays = shapes(v);
        };
        t["profile.baseline"] = [](ExperimentSpec& s, const std::string& v) {
            s.profile.baseline = parse_config_token(trim(v));
        };
        t["profile.configs"] = [](ExperimentSpec& s, const std::string& v) {
            s.profile.configs.clear();
            for (const auto& item : split_list(v)) {
                s.profile.configs.push_back(parse_config_token(item));
            }
        };
        t["profile.repetitions"] = [](ExperimentSpec& s, const std::string& v) {
            const auto n = parse_integer(v, "repetitions");
            if (n < 1) {
                throw ConfigError("repetitions must be positive");
            }
            s.profile.repetitions = static_cast<std::size_t>(n);
        };
        t["profile.warmup"] = [](ExperimentSpec& s, const std::string& v) {
            const auto n = parse_integer(v, "warmup");
            if (n < 0) {
                throw ConfigError("warmup must be non-negative");
            }
            s.profile.warmup = static_cast<std::size_t>(n);
        };
        return t;
    }();
    return table;
}

void apply(ExperimentSpec& spec, const std::string& section, const std::string& key, const std::string& value,
           const std::string& where)
{
    const auto& t = setters();
    const auto it = t.find(section + "." + key);
    if (it == t.end()) {
        throw ConfigError(where + ": unknown key '" + key + "'" +
                          (section.empty() ? std::string(" outside any section") : " in [" + section + "]"));
    }
    try {
        it->second(spec, value);
    } catch (const ConfigError& e) {
        throw ConfigError(where + ": key '" + key + "': " + e.what());
    }
}

} // namespace

ExperimentSpec parse_config_text(std::string_view text, std::string_view origin, const CliOverrides& o)
{
    ExperimentSpec spec;
    spec.thresholds = default_thresholds();
    std::set<std::string> seen;
    for (const auto& e : parse_kv_text(text, origin)) {
        const std::string where = std::string(origin) + ":" + std::to_string(e.line);
        if (e.index) {
            throw ConfigError(where + ": key '" + e.key + "' does not take a subscript");
        }
        if (!seen.insert(e.section + "." + e.key).second) {
            throw ConfigError(where + ": duplicate key '" + e.key + "'");
        }
        apply(spec, e.section, e.key, e.value, where);
    }

    if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
        spec.output_dir = env;
    }
    const auto flag = [](const std::string& name, auto&& fn) {
        try {
            fn();
        } catch (const ConfigError& e) {
            throw ConfigError("--" + name + ": " + e.what());
        }
    };
    if (o.seed) {
        spec.scenario.seed = *o.seed;
    }
    if (o.drops) {
        spec.num_drops = *o.drops;
    }
    if (o.clusters) {
        flag("clusters", [&] { parse_clusters(*o.clusters, spec.simplification); });
    }
    if (o.rays) {
        spec.simplification.m_rays = *o.rays;
    }
    if (o.ue_array) {
        flag("ue-ant", [&] { spec.ue_array = parse_array_shape(*o.ue_array); });
    }
    if (o.gnb_array) {
        flag("gnb-ant", [&] { spec.gnb_array = parse_array_shape(*o.gnb_array); });
    }
    if (o.output_dir) {
        spec.output_dir = *o.output_dir;
    }
    spec.validate();
    return spec;
}

ExperimentSpec parse_config(const fs::path& path, const CliOverrides& overrides)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open configuration file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path.string(), overrides);
}

std::string emit_config(const ExperimentSpec& s)
{
    const ScenarioConfig& c = s.scenario;
    std::ostringstream o;
    o << "[scenario]\n";
    o << "inter_site_distance = " << shortest(c.inter_site_distance) << "\n";
    o << "num_sites = " << c.num_sites << "\n";
    o << "sectors_per_site = " << c.sectors_per_site << "\n";
    o << "gnb_height = " << shortest(c.gnb_height) << "\n";
    o << "ue_height = " << shortest(c.ue_height) << "\n";
    o << "num_ues = " << c.num_ues << "\n";
    o << "indoor_fraction = " << shortest(c.indoor_fraction) << "\n";
    o << "carrier_frequency = " << shortest(c.carrier_frequency) << "\n";
    o << "bandwidth = " << shortest(c.bandwidth) << "\n";
    o << "subcarrier_spacing = " << shortest(c.subcarrier_spacing) << "\n";
    o << "tx_power = " << shortest(c.tx_power) << "\n";
    o << "noise_figure = " << shortest(c.noise_figure) << "\n";
    o << "seed = " << c.seed << "\n";
    o << "o2i_penetration_loss = " << shortest(c.o2i_penetration_loss) << "\n";
    o << "o2i_indoor_loss_per_m = " << shortest(c.o2i_indoor_loss_per_m) << "\n";
    o << "o2i_max_indoor_distance = " << shortest(c.o2i_max_indoor_distance) << "\n";
    o << "min_ue_distance = " << shortest(c.min_ue_distance) << "\n";
    o << "\n[channel]\n";
    o << "clusters = " << s.simplification.clusters_string() << "\n";
    o << "rays = " << s.simplification.m_rays << "\n";
    o << "ue_array = " << s.ue_array.to_string() << "\n";
    o << "gnb_array = " << s.gnb_array.to_string() << "\n";
    if (!s.parameter_file.empty()) {
        o << "parameter_file = " << s.parameter_file << "\n";
    }
    o << "match_large_scale = " << (s.match_large_scale ? "true" : "false") << "\n";
    o << "\n[run]\n";
    o << "drops = " << s.num_drops << "\n";
    o << "metrics = " << join(std::vector<MetricKind>(s.metrics.begin(), s.metrics.end()), [](MetricKind m) {
        return to_string(m);
    }) << "\n";
    if (!s.output_dir.empty()) {
        o << "output_dir = " << s.output_dir << "\n";
    }
    o << "interference = " << interference_name(s.interference) << "\n";
    o << "thresholds = " << join(s.thresholds, shortest) << "\n";
    o << "save_realizations = " << (s.save_realizations ? "true" : "false") << "\n";
    o << "\n[profile]\n";
    o << "ue_arrays = " << join(s.profile.ue_arrays, [](ArrayShape a) { return a.to_string(); }) << "\n";
    o << "gnb_arrays = " << join(s.profile.gnb_arrays, [](ArrayShape a) { return a.to_string(); }) << "\n";
    o << "baseline = " << config_token(s.profile.baseline) << "\n";
    o << "configs = " << join(s.profile.configs, config_token) << "\n";
    o << "repetitions = " << s.profile.repetitions << "\n";
    o << "warmup = " << s.profile.warmup << "\n";
    return o.str();
}

namespace {

class CsvFile {
  public:
    CsvFile(const fs::path& path, const std::string& header) : out_(path, std::ios::binary), path_(path)
    {
        if (!out_) {
            throw IoError("cannot open " + path.string() + " for writing");
        }
        out_ << header << '\n';
    }

    void row(std::initializer_list<std::string> cells)
    {
        bool first = true;
        for (const auto& c : cells) {
            if (!first) {
                out_ << ',';
            }
            out_ << c;
            first = false;
        }
        out_ << '\n';
    }

    const fs::path& close()
    {
        out_.close();
        if (!out_) {
            throw IoError("write to " + path_.string() + " failed");
        }
        return path_;
    }

  private:
    std::ofstream out_;
    fs::path path_;
};

std::string db(double v)
{
    return format_fixed(v, 4);
}

nlohmann::json spec_json(const ExperimentSpec& s)
{
    const ScenarioConfig& c = s.scenario;
    nlohmann::json j;
    j["scenario"] = {{"inter_site_distance", c.inter_site_distance},
                     {"num_sites", c.num_sites},
                     {"sectors_per_site", c.sectors_per_site},
                     {"gnb_height", c.gnb_height},
                     {"ue_height", c.ue_height},
                     {"num_ues", c.num_ues},
                     {"indoor_fraction", c.indoor_fraction},
                     {"carrier_frequency", c.carrier_frequency},
                     {"bandwidth", c.bandwidth},
                     {"subcarrier_spacing", c.subcarrier_spacing},
                     {"num_subcarriers", c.num_subcarriers()},
                     {"tx_power", c.tx_power},
                     {"noise_figure", c.noise_figure},
                     {"seed", c.seed}};
    j["channel"] = {{"clusters", s.simplification.clusters_string()},
                    {"rays", s.simplification.m_rays},
                    {"ue_array", s.ue_array.to_string()},
                    {"gnb_array", s.gnb_array.to_string()},
                    {"parameter_file", s.resolved_parameter_file().string()},
                    {"match_large_scale", s.match_large_scale}};
    std::vector<std::string> metrics;
    for (auto m : s.metrics) {
        metrics.push_back(to_string(m));
    }
    j["run"] = {{"drops", s.num_drops},
                {"metrics", metrics},
                {"output_dir", s.output_dir},
                {"interference", interference_name(s.interference)},
                {"thresholds", s.thresholds},
                {"save_realizations", s.save_realizations}};
    return j;
}

void write_manifest(const fs::path& dir, const ExperimentSpec& spec, const std::string& param_version,
                    const RunReport& report, const std::string& command, nlohmann::json extra = {})
{
    nlohmann::json j;
    j["tool"] = "scmsim";
    j["command"] = command;
    j["code_version"] = code_version();
    j["parameter_table_version"] = param_version;
    j["seed"] = spec.scenario.seed;
    j["status"] = report.partial() ? "partial" : "complete";
    j["diagnostics"] = report.diagnostics;
    std::vector<std::string> files;
    for (const auto& f : report.files) {
        files.push_back(f.filename().string());
    }
    j["files"] = files;
    j["spec"] = spec_json(spec);
    j["config"] = emit_config(spec);
    if (!extra.is_null()) {
        j["details"] = std::move(extra);
    }
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    out << j.dump(2) << '\n';
    if (!out) {
        throw IoError("cannot write " + (dir / "manifest.json").string());
    }
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
}

std::string drop_file_name(int drop)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "drop_%06d.bin", drop);
    return buf;
}

/// Streams per-drop outcomes into the metric files.
class MetricWriter {
  public:
    MetricWriter(const ExperimentSpec& spec, const fs::path& dir) : spec_(spec), dir_(dir)
    {
        if (has(MetricKind::Sinr)) {
            sinr_.emplace(dir / "sinr.csv", "drop,ue_id,sinr_db");
        }
        if (has(MetricKind::Sir)) {
            sir_.emplace(dir / "sir.csv", "drop,ue_id,subcarrier_hz,sir_db");
        }
        grid_ = subcarrier_grid(spec.scenario.bandwidth, spec.scenario.subcarrier_spacing);
        lcf_sum_.assign(spec.thresholds.size(), 0.0);
        run_width_.assign(spec.thresholds.size(), 0.0);
        run_count_.assign(spec.thresholds.size(), 0);
    }

    bool has(MetricKind m) const { return spec_.metrics.count(m) != 0; }

    DropMetrics wanted() const
    {
        DropMetrics w;
        w.sinr = has(MetricKind::Sinr);
        w.sir = has(MetricKind::Sir) || has(MetricKind::Lcf) || has(MetricKind::Afbw);
        w.svr = has(MetricKind::Svr);
        w.interference = spec_.interference;
        return w;
    }

    void add(const DropOutcome& d)
    {
        const std::string drop = std::to_string(d.drop);
        for (std::size_t v = 0; v < d.victims.size(); ++v) {
            const std::string ue = std::to_string(d.victims[v]);
            if (sinr_) {
                sinr_->row({drop, ue, db(d.sinr_db[v])});
            }
            if (v < d.sir.size()) {
                const auto& g = d.sir[v].sir_db;
                if (sir_) {
                    for (std::size_t k = 0; k < g.size(); ++k) {
                        sir_->row({drop, ue, format_fixed(grid_[k], 1), db(g[k])});
                    }
                }
                for (std::size_t t = 0; t < spec_.thresholds.size(); ++t) {
                    lcf_sum_[t] += lcf(g, spec_.thresholds[t]);
                    for (int r : below_threshold_runs(g, spec_.thresholds[t])) {
                        run_width_[t] += r * spec_.scenario.subcarrier_spacing / 1e3;
                        ++run_count_[t];
                    }
                }
                ++grids_;
            }
        }
        for (auto& m : d.serving_nb) {
            serving_.push_back(m);
        }
    }

    std::vector<fs::path> finish()
    {
        std::vector<fs::path> files;
        if (sinr_) {
            files.push_back(sinr_->close());
        }
        if (sir_) {
            files.push_back(sir_->close());
        }
        if (has(MetricKind::Lcf)) {
            CsvFile f(dir_ / "lcf.csv", "threshold_db,value");
            for (std::size_t t = 0; t < spec_.thresholds.size(); ++t) {
                const double v = grids_ ? lcf_sum_[t] / static_cast<double>(grids_) : 0.0;
                f.row({db(spec_.thresholds[t]), format_fixed(v, 9)});
            }
            files.push_back(f.close());
        }
        if (has(MetricKind::Afbw)) {
            // Pooled over every victim: total chunk width over number of chunks.
            CsvFile f(dir_ / "afbw.csv", "threshold_db,value");
            for (std::size_t t = 0; t < spec_.thresholds.size(); ++t) {
                const double v = run_count_[t] ? run_width_[t] / static_cast<double>(run_count_[t]) : 0.0;
                f.row({db(spec_.thresholds[t]), format_fixed(v, 4)});
            }
            files.push_back(f.close());
        }
        if (has(MetricKind::Svr)) {
            CsvFile f(dir_ / "svr.csv", "rank_index,mean_ratio");
            const auto svr = singular_value_ratios(serving_);
            for (std::size_t k = 0; k < svr.mean_ratios.size(); ++k) {
                f.row({std::to_string(k + 1), format_fixed(svr.mean_ratios[k], 9)});
            }
            files.push_back(f.close());
        }
        return files;
    }

  private:
    const ExperimentSpec& spec_;
    fs::path dir_;
    std::optional<CsvFile> sinr_;
    std::optional<CsvFile> sir_;
    std::vector<double> grid_;
    std::vector<double> lcf_sum_;
    std::vector<double> run_width_;
    std::vector<std::size_t> run_count_;
    std::size_t grids_ = 0;
    std::vector<Eigen::MatrixXcd> serving_;
};

} // namespace

RunReport run_simulate(const ExperimentSpec& spec)
{
    spec.validate();
    const ParameterTable params = ParameterTable::load(spec.resolved_parameter_file());
    const fs::path dir(spec.output_dir);
    ensure_dir(dir);
    if (spec.save_realizations) {
        ensure_dir(dir / "drops");
    }

    const DropRunner runner(spec.scenario, params, spec.simplification, spec.ue_array, spec.gnb_array,
                            spec.match_large_scale);
    MetricWriter writer(spec, dir);
    RunReport report;
    for (int k = 0; k < spec.num_drops; ++k) {
        try {
            const DropRecord rec = runner.generate(static_cast<std::uint64_t>(k));
            if (spec.save_realizations) {
                save_drop_record(rec, dir / "drops" / drop_file_name(k));
            }
            writer.add(evaluate_drop(rec, spec.scenario, writer.wanted()));
        } catch (const std::exception& e) {
            report.diagnostics.push_back("drop " + std::to_string(k) + ": " + e.what());
        }
    }
    report.files = writer.finish();
    write_manifest(dir, spec, params.version(), report, "simulate");
    report.files.push_back(dir / "manifest.json");
    return report;
}

ExperimentSpec spec_from_manifest(const fs::path& manifest)
{
    std::ifstream in(manifest);
    if (!in) {
        throw IoError("cannot open " + manifest.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(manifest.string() + ": " + e.what());
    }
    if (!j.contains("config") || !j["config"].is_string()) {
        throw IoError(manifest.string() + ": no embedded configuration");
    }
    return parse_config_text(j["config"].get<std::string>(), manifest.string() + "#config");
}

RunReport run_metrics(const fs::path& input_dir, const fs::path& output_dir)
{
    ExperimentSpec spec = spec_from_manifest(input_dir / "manifest.json");
    spec.output_dir = output_dir.string();
    const ParameterTable params = ParameterTable::load(spec.resolved_parameter_file());
    ensure_dir(output_dir);
    MetricWriter writer(spec, output_dir);
    RunReport report;
    for (int k = 0; k < spec.num_drops; ++k) {
        const fs::path file = input_dir / "drops" / drop_file_name(k);
        try {
            if (!fs::exists(file)) {
                throw IoError("missing drop record " + file.string());
            }
            writer.add(evaluate_drop(load_drop_record(file), spec.scenario, writer.wanted()));
        } catch (const std::exception& e) {
            report.diagnostics.push_back("drop " + std::to_string(k) + ": " + e.what());
        }
    }
    report.files = writer.finish();
    write_manifest(output_dir, spec, params.version(), report, "metrics",
                   {{"source", fs::absolute(input_dir).string()}});
    report.files.push_back(output_dir / "manifest.json");
    return report;
}

RunReport run_profile(const ExperimentSpec& spec)
{
    spec.validate();
    const ParameterTable params = ParameterTable::load(spec.resolved_parameter_file());
    const fs::path dir(spec.output_dir);
    ensure_dir(dir);

    ProfileSettings settings;
    settings.repetitions = spec.profile.repetitions;
    settings.warmup = spec.profile.warmup;
    const ProfileWorkload workload(spec.scenario, params);
    const auto rows = speedup_table(workload, spec.profile.baseline, spec.profile.configs, spec.profile.ue_arrays,
                                    spec.profile.gnb_arrays, settings);

    RunReport report;
    const auto prefix = [](const SpeedupRow& r) {
        return std::vector<std::string>{std::to_string(r.ue_elements), std::to_string(r.gnb_elements),
                                        std::to_string(r.config.n_los), std::to_string(r.config.n_nlos),
                                        std::to_string(r.config.n_o2i), std::to_string(r.config.m_rays)};
    };
    CsvFile timing(dir / "timing.csv",
                   "ue_elements,gnb_elements,n_los,n_nlos,n_o2i,m_rays,phase,median_s,ci_low_s,ci_high_s,speedup");
    CsvFile speed(dir / "speedup.csv", "ue_elements,gnb_elements,n_los,n_nlos,n_o2i,m_rays,mean_s,speedup");
    nlohmann::json reliability = nlohmann::json::array();
    for (const auto& r : rows) {
        const auto p = prefix(r);
        const std::pair<const char*, const PhaseStat*> phases[] = {{"computations", &r.timing.computations},
                                                                   {"random_variables", &r.timing.random_variables},
                                                                   {"other", &r.timing.other},
                                                                   {"total", &r.timing.total}};
        for (const auto& [name, st] : phases) {
            timing.row({p[0], p[1], p[2], p[3], p[4], p[5], name, format_fixed(st->median, 9),
                        format_fixed(st->ci_low, 9), format_fixed(st->ci_high, 9), format_fixed(r.speedup, 4)});
        }
        speed.row({p[0], p[1], p[2], p[3], p[4], p[5], format_fixed(r.mean_time, 9), format_fixed(r.speedup, 4)});
        if (!r.timing.reliable) {
            reliability.push_back(r.ue_array.to_string() + "/" + r.gnb_array.to_string() + " " + r.config.label() +
                                  ": " + r.timing.diagnostic);
        }
    }
    report.files.push_back(timing.close());
    report.files.push_back(speed.close());
    write_manifest(dir, spec, params.version(), report, "profile", {{"unreliable_timings", reliability}});
    report.files.push_back(dir / "manifest.json");
    return report;
}

} // namespace scm
