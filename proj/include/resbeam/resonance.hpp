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

#ifndef RESBEAM_RESONANCE_HPP
#define RESBEAM_RESONANCE_HPP

#include "resbeam/channel.hpp"
#include "resbeam/geometry.hpp"
#include "resbeam/scenario.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace resbeam
{
    // Coherent carrier amplitudes of one link; power is |a|^2 in W.
    // After step i, bs_amplitudes is the BS excitation for iteration i + 1 and
    // ue_amplitudes is what the UE re-radiated during iteration i.
    struct LinkState
    {
        CVector bs_amplitudes;
        CVector ue_amplitudes;
        int iteration = 0;
        double amp_input_w = 0.0; // Amplifier input of the last completed iteration
    };

    // Powers of one BS -> UE -> BS round trip.
    // loss = (1-gamma) p_bs_rx / p_bs_tx is measured at the amplifier port and
    // gain = p_bs_tx(i) / ((1-gamma) p_bs_rx(i-1)) equals the amplifier gain that
    // produced this iteration's excitation. gain is NaN at iteration 1.
    struct IterationRecord
    {
        int iteration = 0;
        double p_bs_tx = 0.0;
        double p_ue_rx = 0.0;
        double p_ue_tx = 0.0;
        double p_bs_rx = 0.0;
        double loss = 0.0;
        double gain = 0.0;
        double g_pa_effective = 0.0; // Gain applied at the end of this iteration
        bool converged = false;
    };

    struct IterationSnapshot
    {
        CVector bs_tx;
        CVector ue_tx;
    };

    struct ResonanceTrace
    {
        int link_id = 0;
        std::vector<IterationRecord> records; // records[i].iteration == i + 1
        LinkState final_state;
        std::optional<int> iterations_to_converge;
        bool reseeded = false;
        std::vector<IterationSnapshot> history; // Filled when EngineOptions::keep_history

        bool converged() const { return iterations_to_converge.has_value(); }
        const IterationRecord &last() const { return records.back(); }
        // I_k, or the number of iterations run when the link never settled.
        int iteration_count() const { return iterations_to_converge.value_or(static_cast<int>(records.size())); }
    };

    /// Uniform magnitude sqrt(total_power / count); zero or uniform(-pi, pi] phases
    /// drawn from a 64-bit Mersenne twister seeded with `seed`.
    CVector initial_excitation(std::size_t count, double total_power, InitPhase mode, std::uint64_t seed);

    /// Element-wise conjugation with power scaling: |out| = sqrt(scale) |in|, arg out = -arg in.
    CVector conjugate_retransmit(const CVector &received, double power_scale);

    struct AmplifierOutput
    {
        CVector transmit;
        double g_pa_effective = 0.0;
    };

    /// Taps gamma for demodulation, then amplifies the rest with
    /// g = min(g_pa_max, p_cap_link / P_in) and conjugates. Throws DarkLinkError when P_in = 0.
    AmplifierOutput bs_amplify(const CVector &received, double gamma, double p_cap_link, double g_pa_max);

    // Lattices and both channel directions of one BS <-> UE link.
    struct LinkChannels
    {
        int link_id = 0;
        ArrayGeometry bs_tx;
        ArrayGeometry bs_rx;
        ArrayGeometry ue_tx;
        ArrayGeometry ue_rx;
        ChannelMatrix downlink; // bs_tx -> ue_rx at f_dl
        ChannelMatrix uplink;   // ue_tx -> bs_rx at f_ul
    };

    LinkChannels build_link_channels(const Scenario &scenario, std::size_t ue_index, Backend backend = Backend::parallel);

    // Seed of one link's initial excitation; independent of link order.
    std::uint64_t link_seed(std::uint64_t scenario_seed, int link_id);

    struct EngineOptions
    {
        Backend backend = Backend::parallel;
        bool keep_history = false;
    };

    /// Runs the BS <-> UE phase-conjugation loop of every sub-band. Links are
    /// isolated (ideal band-pass filtering) and each gets p_cap_total / K.
    class ResonanceEngine
    {
    public:
        explicit ResonanceEngine(Scenario scenario, EngineOptions options = {});

        const Scenario &scenario() const { return scenario_; }
        std::size_t link_count() const { return links_.size(); }
        const LinkChannels &link(std::size_t index) const { return links_.at(index); }
        double link_power_cap() const;

        LinkState initial_state(std::size_t index) const;

        // One round trip. Propagates DarkLinkError.
        std::pair<LinkState, IterationRecord> step(std::size_t index, const LinkState &state) const;

        ResonanceTrace run_link(std::size_t index) const;
        std::vector<ResonanceTrace> run() const;

    private:
        Scenario scenario_;
        EngineOptions options_;
        std::vector<LinkChannels> links_;
    };
}

#endif
