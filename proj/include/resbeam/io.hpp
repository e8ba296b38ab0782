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

#ifndef RESBEAM_IO_HPP
#define RESBEAM_IO_HPP

#include "resbeam/experiments.hpp"
#include "resbeam/metrics.hpp"
#include "resbeam/resonance.hpp"

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace resbeam
{
    // Round-trip-safe decimal (17 significant digits); "nan", "inf", "-inf" for non-finite values.
    std::string format_double(double value);

    // Columns: iter, p_bs_tx_w, p_ue_rx_w, p_ue_tx_w, p_bs_rx_w, loss, gain, g_pa_db, converged.
    void write_trace_csv(const ResonanceTrace &trace, std::ostream &out);
    void write_trace_csv(const ResonanceTrace &trace, const std::filesystem::path &path);

    struct LinkSummary
    {
        const ResonanceTrace *trace = nullptr;
        LinkMetrics metrics;
    };

    // Sectioned "key = value" report: per-link I_k, steady loss, final powers and metrics.
    void write_metrics_report(const std::vector<LinkSummary> &links, const Efficiencies &totals, std::ostream &out);

    // One row per (value, link). Header names every column.
    void write_sweep_csv(const SweepResult &sweep, TimeModel time_model, std::ostream &out);

    struct RunManifest
    {
        std::uint64_t scenario_hash = 0;
        std::uint64_t seed = 0;
        std::string tool_version = RESBEAM_VERSION;
        std::string command_line;
        std::vector<std::string> outputs; // Relative to the manifest's directory
        double wall_clock_s = 0.0;
        std::string timestamp; // UTC, ISO-8601
    };

    void write_manifest(const RunManifest &manifest, const std::filesystem::path &path);

    std::string hex64(std::uint64_t value);
    std::string utc_timestamp();
}

#endif
