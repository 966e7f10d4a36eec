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

#include "scm/drop.hpp"

#include "scm/errors.hpp"

#include <cstring>
#include <fstream>
#include <type_traits>

namespace scm {

std::vector<int> schedule_active_ues(const Deployment& deployment, Rng& rng)
{
    std::vector<int> active(deployment.num_gnbs(), -1);
    for (int g = 0; g < deployment.num_gnbs(); ++g) {
        const auto served = deployment.ues_attached_to(g);
        if (!served.empty()) {
            active[g] = served[rng.index(served.size())];
        }
    }
    return active;
}

DropRunner::DropRunner(const ScenarioConfig& scenario, const ParameterTable& params,
                       SimplificationConfig simplification, ArrayShape ue_array, ArrayShape gnb_array,
                       bool match_large_scale)
    : scenario_(scenario), params_(&params), ue_shape_(ue_array), gnb_shape_(gnb_array),
      generator_(params, simplification, scenario.carrier_frequency, scenario.seed, match_large_scale)
{
    scenario_.validate();
    simplification.validate(params);
}

DropRecord DropRunner::generate(std::uint64_t drop) const
{
    DropRecord rec;
    rec.drop = drop;
    Rng scenario_rng = Rng::derive(scenario_.seed, StreamDomain::Scenario, {drop});
    rec.deployment = drop_scenario(scenario_, *params_, scenario_rng);
    const Deployment& d = rec.deployment;

    Rng scheduling_rng = Rng::derive(scenario_.seed, StreamDomain::Scheduling, {drop});
    rec.channels.active_ue = schedule_active_ues(d, scheduling_rng);
    rec.victims = d.central_ues();

    const double lambda = scenario_.wavelength();
    std::vector<AntennaArray> gnb_arrays;
    gnb_arrays.reserve(d.num_gnbs());
    for (int g = 0; g < d.num_gnbs(); ++g) {
        gnb_arrays.emplace_back(gnb_shape_.rows, gnb_shape_.cols, lambda, 0.5, d.sector_azimuths[g]);
    }

    const auto realize = [&](int g, int ue) {
        const LinkKey key{g, ue};
        if (rec.channels.realizations.count(key) != 0) {
            return;
        }
        const AntennaArray ue_array(ue_shape_.rows, ue_shape_.cols, lambda, 0.5, d.ue_orientations[ue]);
        LinkContext ctx;
        ctx.id = {drop, g, ue};
        ctx.state = d.link(g, ue).state;
        ctx.geometry = LinkGeometry::between(d.gnb_positions[g], d.ue_positions[ue]);
        rec.channels.realizations.emplace(key, generator_.generate(ctx, gnb_arrays[g], ue_array));
    };

    for (int g = 0; g < d.num_gnbs(); ++g) {
        if (rec.channels.active_ue[g] >= 0) {
            realize(g, rec.channels.active_ue[g]);
        }
    }
    for (const int ue : rec.victims) {
        for (int g = 0; g < d.num_gnbs(); ++g) {
            realize(g, ue);
        }
    }
    return rec;
}

DropOutcome evaluate_drop(const DropRecord& record, const ScenarioConfig& scenario, const DropMetrics& what)
{
    const Deployment& d = record.deployment;
    DropChannels channels = record.channels;
    channels.beams.clear();
    const auto add_beam = [&](int g, int ue) {
        const LinkKey key{g, ue};
        if (channels.beams.count(key) == 0) {
            channels.beams.emplace(key, svd_beamforming(channels.realization(g, ue).narrowband()));
        }
    };
    for (int g = 0; g < d.num_gnbs(); ++g) {
        if (channels.active_ue[g] >= 0) {
            add_beam(g, channels.active_ue[g]);
        }
    }
    for (const int ue : record.victims) {
        add_beam(d.attachment.at(ue), ue);
    }

    DropOutcome out;
    out.drop = record.drop;
    out.victims = record.victims;
    if (what.sinr) {
        out.sinr_db = narrowband_sinr(d, channels, scenario, record.victims);
    }
    if (what.svr) {
        for (const int ue : record.victims) {
            out.serving_nb.push_back(channels.realization(d.attachment.at(ue), ue).narrowband());
        }
    }
    if (what.sir) {
        const auto grid = subcarrier_grid(scenario.bandwidth, scenario.subcarrier_spacing);
        for (const int ue : record.victims) {
            const int serving = d.attachment.at(ue);
            const BeamformingPair& own = channels.beam(serving, ue);
            auto victim = frequency_response(channels.realization(serving, ue), own.tx_weights, own.rx_weights, grid);
            const double a = link_amplitude(d.link(serving, ue), scenario);
            for (auto& v : victim) {
                v *= a;
            }
            std::vector<std::vector<std::complex<double>>> interferers;
            for (int g = 0; g < d.num_gnbs(); ++g) {
                const int target = channels.active_ue[g];
                if (g == serving || target < 0) {
                    continue;
                }
                auto h = frequency_response(channels.realization(g, ue), channels.beam(g, target).tx_weights,
                                            own.rx_weights, grid);
                const double ai = link_amplitude(d.link(g, ue), scenario);
                for (auto& v : h) {
                    v *= ai;
                }
                interferers.push_back(std::move(h));
            }
            out.sir.push_back(wideband_sir(victim, interferers, what.interference));
        }
    }
    return out;
}

// Binary record layout: native-endian PODs behind a magic tag. Records are
// scratch data for the metrics subcommand, not an interchange format.
namespace {

constexpr char kMagic[8] = {'S', 'C', 'M', 'D', 'R', 'O', 'P', '1'};

class Writer {
  public:
    explicit Writer(const std::filesystem::path& path) : out_(path, std::ios::binary), path_(path)
    {
        if (!out_) {
            throw IoError("cannot open " + path.string() + " for writing");
        }
    }

    template <typename T>
    void pod(const T& v)
    {
        static_assert(std::is_trivially_copyable_v<T>);
        out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
    }

    template <typename T>
    void vec(const std::vector<T>& v)
    {
        pod<std::uint64_t>(v.size());
        for (const auto& x : v) {
            pod(x);
        }
    }

    void finish()
    {
        out_.flush();
        if (!out_) {
            throw IoError("write to " + path_.string() + " failed");
        }
    }

  private:
    std::ofstream out_;
    std::filesystem::path path_;
};

class Reader {
  public:
    explicit Reader(const std::filesystem::path& path) : in_(path, std::ios::binary), path_(path)
    {
        if (!in_) {
            throw IoError("cannot open " + path.string());
        }
    }

    template <typename T>
    T pod()
    {
        T v{};
        in_.read(reinterpret_cast<char*>(&v), sizeof(T));
        if (!in_) {
            throw IoError(path_.string() + ": truncated drop record");
        }
        return v;
    }

    std::uint64_t count(std::uint64_t limit = 1ULL << 32)
    {
        const auto n = pod<std::uint64_t>();
        if (n > limit) {
            throw IoError(path_.string() + ": corrupt drop record (count " + std::to_string(n) + ")");
        }
        return n;
    }

    template <typename T>
    std::vector<T> vec()
    {
        std::vector<T> v(count());
        for (auto& x : v) {
            x = pod<T>();
        }
        return v;
    }

    std::istream& stream() { return in_; }

  private:
    std::ifstream in_;
    std::filesystem::path path_;
};

} // namespace

void save_drop_record(const DropRecord& r, const std::filesystem::path& path)
{
    Writer w(path);
    for (char c : kMagic) {
        w.pod(c);
    }
    const Deployment& d = r.deployment;
    w.pod(r.drop);
    w.pod<std::int32_t>(d.num_sites);
    w.pod<std::int32_t>(d.sectors_per_site);
    w.vec(d.gnb_positions);
    w.vec(d.sector_azimuths);
    w.vec(d.ue_positions);
    w.pod<std::uint64_t>(d.ue_indoor.size());
    for (bool b : d.ue_indoor) {
        w.pod<std::uint8_t>(b ? 1 : 0);
    }
    w.vec(d.ue_orientations);
    w.vec(d.links);
    w.vec(d.attachment);
    w.vec(r.victims);
    w.vec(r.channels.active_ue);
    w.pod<std::uint64_t>(r.channels.realizations.size());
    for (const auto& [key, real] : r.channels.realizations) {
        w.pod<std::int32_t>(key.first);
        w.pod<std::int32_t>(key.second);
        w.pod(real.link.drop);
        w.pod<std::int32_t>(real.link.gnb);
        w.pod<std::int32_t>(real.link.ue);
        w.pod(real.state);
        w.pod(real.simplification);
        w.vec(real.delays);
        w.pod<std::uint64_t>(real.matrices.size());
        for (const auto& m : real.matrices) {
            w.pod<std::int64_t>(m.rows());
            w.pod<std::int64_t>(m.cols());
            for (Eigen::Index k = 0; k < m.size(); ++k) {
                w.pod(m.data()[k]);
            }
        }
    }
    w.finish();
}

DropRecord load_drop_record(const std::filesystem::path& path)
{
    Reader rd(path);
    for (char c : kMagic) {
        if (rd.pod<char>() != c) {
            throw IoError(path.string() + ": not a drop record");
        }
    }
    DropRecord r;
    Deployment& d = r.deployment;
    r.drop = rd.pod<std::uint64_t>();
    d.num_sites = rd.pod<std::int32_t>();
    d.sectors_per_site = rd.pod<std::int32_t>();
    d.gnb_positions = rd.vec<Vec3>();
    d.sector_azimuths = rd.vec<double>();
    d.ue_positions = rd.vec<Vec3>();
    d.ue_indoor.resize(rd.count());
    for (std::size_t i = 0; i < d.ue_indoor.size(); ++i) {
        d.ue_indoor[i] = rd.pod<std::uint8_t>() != 0;
    }
    d.ue_orientations = rd.vec<double>();
    d.links = rd.vec<Link>();
    d.attachment = rd.vec<int>();
    r.victims = rd.vec<int>();
    r.channels.active_ue = rd.vec<int>();
    if (d.links.size() != d.gnb_positions.size() * d.ue_positions.size()) {
        throw IoError(path.string() + ": link table size mismatch");
    }
    const auto n = rd.count();
    for (std::uint64_t i = 0; i < n; ++i) {
        LinkKey key;
        key.first = rd.pod<std::int32_t>();
        key.second = rd.pod<std::int32_t>();
        ChannelRealization real;
        real.link.drop = rd.pod<std::uint64_t>();
        real.link.gnb = rd.pod<std::int32_t>();
        real.link.ue = rd.pod<std::int32_t>();
        real.state = rd.pod<ChannelState>();
        real.simplification = rd.pod<SimplificationConfig>();
        real.delays = rd.vec<double>();
        real.matrices.resize(rd.count(1 << 16));
        for (auto& m : real.matrices) {
            const auto rows = rd.pod<std::int64_t>();
            const auto cols = rd.pod<std::int64_t>();
            if (rows < 0 || cols < 0 || rows * cols > (1LL << 28)) {
                throw IoError(path.string() + ": corrupt matrix shape");
            }
            m.resize(rows, cols);
            for (Eigen::Index k = 0; k < m.size(); ++k) {
                m.data()[k] = rd.pod<std::complex<double>>();
            }
        }
        r.channels.realizations.emplace(key, std::move(real));
    }
    return r;
}

} // namespace scm
