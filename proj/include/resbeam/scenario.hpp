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

#ifndef RESBEAM_SCENARIO_HPP
#define RESBEAM_SCENARIO_HPP

#include "resbeam/gain_pattern.hpp"
#include "resbeam/types.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace resbeam
{
    struct PhysicalConstants
    {
        double z0 = 377.0;          // Characteristic impedance [ohm]
        double kappa = 1.38e-23;    // Boltzmann constant [J/K]
        double c = 2.99792458e8;    // Speed of light [m/s]
        double temperature = 295.0; // Ambient temperature [K]

        bool operator==(const PhysicalConstants &) const = default;
    };

    enum class InitPhase
    {
        random,
        zero
    };

    struct ControlParams
    {
        double alpha = 0.995;        // UE power-harvesting ratio
        double gamma = 0.995;        // BS signal-processing tap
        double p_cap_total = 20.0;   // BS output cap over all links [W]
        double g_pa_max = 1e9;       // Amplifier gain ceiling (linear)
        double beta = 2.0;           // Path-loss exponent
        double delta_db = 3.0;       // Implementation-loss derating in the rate formula [dB]
        double bandwidth = 1e9;      // Sub-band bandwidth [Hz]
        double noise_figure_db = 6.0;
        double conv_tol = 1e-4;      // Relative change of the loss coefficient
        int conv_window = 3;         // Consecutive passes needed
        int max_iters = 200;
        std::uint64_t init_seed = 1;
        InitPhase init_phase = InitPhase::random;

        bool operator==(const ControlParams &) const = default;
    };

    struct LatticeSpec
    {
        int rows = 30;
        int cols = 30;
        double spacing = 0.0; // [m]

        bool operator==(const LatticeSpec &) const = default;
    };

    enum class NodeRole
    {
        bs,
        ue
    };

    // One node of the system. The Tx and Rx lattices share `position` as their center.
    struct NodeSpec
    {
        NodeRole role = NodeRole::ue;
        Vec3 position = Vec3::Zero();
        Vec3 normal = Vec3::UnitZ();
        LatticeSpec tx;
        LatticeSpec rx;
        int link_id = 0; // Sub-band index, UE only

        bool operator==(const NodeSpec &) const = default;
    };

    struct FrequencyEntry
    {
        int link_id = 0;
        double f_dl = 0.0; // [Hz]
        double f_ul = 0.0; // [Hz]

        bool operator==(const FrequencyEntry &) const = default;
    };

    struct FrequencyPlan
    {
        std::vector<FrequencyEntry> entries;
        double bandwidth = 1e9;

        const FrequencyEntry &at(int link_id) const;
        bool operator==(const FrequencyPlan &) const = default;
    };

    struct Scenario
    {
        PhysicalConstants constants;
        ControlParams control;
        GainPattern pattern;
        NodeSpec bs;
        std::vector<NodeSpec> ues;
        FrequencyPlan plan;

        bool operator==(const Scenario &) const = default;

        const FrequencyEntry &band(std::size_t ue_index) const { return plan.at(ues.at(ue_index).link_id); }
    };

    struct ParseOptions
    {
        bool strict = true; // Reject unknown keys
    };

    /// Parses and validates a JSON scenario document. Omitted fields take the
    /// built-in defaults; omitted spacings follow the per-node half-wavelength
    /// rule and an omitted UE normal points at the BS array center.
    /// Throws ScenarioError naming the offending field.
    Scenario parse_scenario(std::string_view text, const ParseOptions &options = {});
    Scenario load_scenario(const std::filesystem::path &path, const ParseOptions &options = {});

    // Canonical JSON form; parse_scenario(serialize_scenario(s)) == s.
    std::string serialize_scenario(const Scenario &scenario);

    // Checks every invariant of a programmatically built scenario.
    void validate_scenario(const Scenario &scenario);

    /// BS at the origin facing +z, UE 1 at (1,0,2) and UE 2 at (-1,0,2) facing the BS,
    /// 30x30 lattices, bands 28.517/29.5 GHz and 29/30 GHz.
    Scenario default_two_ue_scenario();

    // Half-wavelength spacings of the per-node rule.
    void apply_default_spacings(Scenario &scenario, bool overwrite);

    // FNV-1a over the canonical serialization.
    std::uint64_t scenario_hash(const Scenario &scenario);

    Vec3 direction_from_angles(const Vec3 &boresight, double elevation_deg, double azimuth_deg);
}

#endif
