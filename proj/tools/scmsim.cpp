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

#include "scm/errors.hpp"
#include "scm/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

// Exit codes by diagnostic category.
enum Exit : int {
    kOk = 0,
    kUsage = 1,
    kConfig = 2,
    kIo = 3,
    kContract = 4,
    kBusy = 5,
    kPartial = 6,
    kInternal = 70,
};

struct Flags {
    std::string config;
    std::string manifest;
    std::string input;
    scm::CliOverrides overrides;
};

void add_common(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--config", f.config, "configuration file");
    cmd->add_option("--seed", f.overrides.seed, "master seed");
    cmd->add_option("--drops", f.overrides.drops, "number of drops");
    cmd->add_option("--clusters", f.overrides.clusters, "clusters per state, L/N/O");
    cmd->add_option("--rays", f.overrides.rays, "rays per cluster");
    cmd->add_option("--ue-ant", f.overrides.ue_array, "UE array, RxC");
    cmd->add_option("--gnb-ant", f.overrides.gnb_array, "gNB array, RxC");
    cmd->add_option("--out", f.overrides.output_dir, "output directory");
}

scm::ExperimentSpec load_spec(const Flags& f)
{
    if (!f.manifest.empty()) {
        scm::ExperimentSpec spec = scm::spec_from_manifest(f.manifest);
        if (f.overrides.output_dir) {
            spec.output_dir = *f.overrides.output_dir;
        }
        return spec;
    }
    if (f.config.empty()) {
        return scm::parse_config_text("", "<flags>", f.overrides);
    }
    return scm::parse_config(f.config, f.overrides);
}

int report(const scm::RunReport& r)
{
    for (const auto& file : r.files) {
        std::cout << "wrote " << file.string() << '\n';
    }
    for (const auto& d : r.diagnostics) {
        std::cerr << "scmsim: partial: " << d << '\n';
    }
    return r.partial() ? kPartial : kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"scmsim: spatial channel model simulator"};
    app.require_subcommand(1);

    Flags sim;
    auto* simulate = app.add_subcommand("simulate", "run drops and write metric CSVs");
    add_common(simulate, sim);
    simulate->add_option("--manifest", sim.manifest, "re-run the configuration stored in a manifest.json")
        ->excludes("--config");

    Flags prof;
    auto* profile = app.add_subcommand("profile", "time channel generation and write timing.csv / speedup.csv");
    add_common(profile, prof);

    Flags met;
    auto* metrics = app.add_subcommand("metrics", "recompute metric CSVs from stored drop records");
    metrics->add_option("--in", met.input, "output directory of a simulate run with save_realizations")
        ->required();
    metrics->add_option("--out", met.overrides.output_dir, "where to write the recomputed files")->required();

    Flags val;
    auto* validate = app.add_subcommand("validate-config", "parse and validate a configuration");
    add_common(validate, val);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*simulate) {
            return report(scm::run_simulate(load_spec(sim)));
        }
        if (*profile) {
            return report(scm::run_profile(load_spec(prof)));
        }
        if (*metrics) {
            return report(scm::run_metrics(met.input, *met.overrides.output_dir));
        }
        if (*validate) {
            std::cout << scm::emit_config(load_spec(val));
            return kOk;
        }
    } catch (const scm::ConfigError& e) {
        std::cerr << "scmsim: config error: " << e.what() << '\n';
        return kConfig;
    } catch (const scm::IoError& e) {
        std::cerr << "scmsim: io error: " << e.what() << '\n';
        return kIo;
    } catch (const scm::ContractViolation& e) {
        std::cerr << "scmsim: contract violation: " << e.what() << '\n';
        return kContract;
    } catch (const scm::ProfilerBusy& e) {
        std::cerr << "scmsim: profiler busy: " << e.what() << '\n';
        return kBusy;
    } catch (const std::exception& e) {
        std::cerr << "scmsim: internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}
