// SPDX-License-Identifier: Apache-2.0
//
// resbeam: resonant-beam SWIPT link simulator
// Copyright (C) 2026 The resbeam authors
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

#include "resbeam/io.hpp"

#include "resbeam/errors.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

namespace resbeam
{
    std::string format_double(double value)
    {
        if (std::isnan(value))
            return "nan";
        if (std::isinf(value))
            return value > 0.0 ? "inf" : "-inf";
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", value);
        return buf;
    }

    void write_trace_csv(const ResonanceTrace &trace, std::ostream &out)
    {
        out << "iter,p_bs_tx_w,p_ue_rx_w,p_ue_tx_w,p_bs_rx_w,loss,gain,g_pa_db,converged\n";
        for (const auto &r : trace.records)
            out << r.iteration << ',' << format_double(r.p_bs_tx) << ',' << format_double(r.p_ue_rx) << ','
                << format_double(r.p_ue_tx) << ',' << format_double(r.p_bs_rx) << ',' << format_double(r.loss) << ','
                << format_double(r.gain) << ',' << format_double(linear_to_db(r.g_pa_effective)) << ','
                << (r.converged ? 1 : 0) << '\n';
    }

    void write_trace_csv(const ResonanceTrace &trace, const std::filesystem::path &path)
    {
        std::ofstream out(path);
        if (!out)
            throw Error("cannot write " + path.string());
        write_trace_csv(trace, out);
    }

    void write_metrics_report(const std::vector<LinkSummary> &links, const Efficiencies &totals, std::ostream &out)
    {
        for (const auto &l : links)
        {
            const auto &t = *l.trace;
            const auto &m = l.metrics;
            const auto &r = t.last();
            out << "[link " << t.link_id << "]\n";
            out << "converged = " << (t.converged() ? "true" : "false") << '\n';
            out << "iterations_run = " << t.records.size() << '\n';
            out << "iterations_to_converge = " << (t.converged() ? std::to_string(*t.iterations_to_converge) : "none")
                << '\n';
            out << "reseeded = " << (t.reseeded ? "true" : "false") << '\n';
            out << "steady_loss = " << format_double(r.loss) << '\n';
            out << "steady_gain = " << format_double(r.gain) << '\n';
            out << "g_pa_db = " << format_double(linear_to_db(r.g_pa_effective)) << '\n';
            out << "p_bs_tx_w = " << format_double(r.p_bs_tx) << '\n';
            out << "p_ue_rx_w = " << format_double(r.p_ue_rx) << '\n';
            out << "p_ue_tx_w = " << format_double(r.p_ue_tx) << '\n';
            out << "p_bs_rx_w = " << format_double(r.p_bs_rx) << '\n';
            out << "p_harvested_w = " << format_double(m.p_harvested) << '\n';
            out << "eta_dl = " << format_double(m.eta_dl) << '\n';
            out << "eta_ul = " << format_double(m.eta_ul) << '\n';
            out << "snr_dl_db = " << format_double(m.snr_dl_db) << (m.snr_dl_floor ? "  # floor" : "") << '\n';
            out << "snr_ul_db = " << format_double(m.snr_ul_db) << (m.snr_ul_floor ? "  # floor" : "") << '\n';
            out << "se_dl_bps_hz = " << format_double(m.se_dl) << '\n';
            out << "se_ul_bps_hz = " << format_double(m.se_ul) << '\n';
            out << '\n';
        }
        out << "[total]\n";
        out << "eta_dl = " << format_double(totals.eta_dl) << '\n';
        out << "eta_ul = " << format_double(totals.eta_ul) << '\n';
    }

    void write_sweep_csv(const SweepResult &sweep, TimeModel time_model, std::ostream &out)
    {
        out << "label," << sweep.parameter
            << ",link_id,distance_m,iterations,converged,eta_dl,eta_ul,snr_dl_db,snr_ul_db,se_dl,se_ul,"
               "p_harvested_w,total_efficiency,resonance_time_s,time_literal_s,time_physical_s\n";
        for (const auto &p : sweep.points)
            for (std::size_t k = 0; k < p.links.size(); ++k)
            {
                const auto &m = p.links[k];
                out << p.label << ',' << format_double(p.value) << ',' << m.link_id << ','
                    << format_double(p.distances[k]) << ',' << p.iterations[k] << ',' << (p.converged[k] ? 1 : 0)
                    << ',' << format_double(m.eta_dl) << ',' << format_double(m.eta_ul) << ','
                    << format_double(m.snr_dl_db) << ',' << format_double(m.snr_ul_db) << ','
                    << format_double(m.se_dl) << ',' << format_double(m.se_ul) << ','
                    << format_double(m.p_harvested) << ',' << format_double(p.total_efficiency) << ','
                    << format_double(p.resonance_time(time_model)) << ',' << format_double(p.time_literal_s) << ','
                    << format_double(p.time_physical_s) << '\n';
            }
    }

    std::string hex64(std::uint64_t value)
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
        return buf;
    }

    std::string utc_timestamp()
    {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }

    void write_manifest(const RunManifest &manifest, const std::filesystem::path &path)
    {
        nlohmann::ordered_json doc{{"tool", "resbeam"},
                                   {"tool_version", manifest.tool_version},
                                   {"scenario_hash", hex64(manifest.scenario_hash)},
                                   {"seed", manifest.seed},
                                   {"command_line", manifest.command_line},
                                   {"timestamp", manifest.timestamp},
                                   {"wall_clock_s", manifest.wall_clock_s},
                                   {"outputs", manifest.outputs}};
        std::ofstream out(path);
        if (!out)
            throw Error("cannot write " + path.string());
        out << doc.dump(2) << '\n';
    }
}
