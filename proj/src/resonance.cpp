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

#include "resbeam/resonance.hpp"

#include "resbeam/errors.hpp"
#include "resbeam/kernels.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <random>

namespace resbeam
{
    CVector initial_excitation(std::size_t count, double total_power, InitPhase mode, std::uint64_t seed)
    {
        const auto n = static_cast<Eigen::Index>(count);
        CVector out(n);
        if (count == 0)
            return out;
        const double magnitude = std::sqrt(total_power / static_cast<double>(count));
        if (mode == InitPhase::zero)
        {
            out.setConstant(cd(magnitude, 0.0));
            return out;
        }
        std::mt19937_64 gen(seed);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            // 53-bit uniform in [0, 1) mapped onto (-pi, pi].
            const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
            out[i] = std::polar(magnitude, kPi - kTwoPi * unit);
        }
        return out;
    }

    CVector conjugate_retransmit(const CVector &received, double power_scale)
    {
        return received.conjugate() * std::sqrt(power_scale);
    }

    AmplifierOutput bs_amplify(const CVector &received, double gamma, double p_cap_link, double g_pa_max)
    {
        const double p_in = (1.0 - gamma) * received.squaredNorm();
        if (!(p_in > 0.0))
            throw DarkLinkError();
        AmplifierOutput out;
        out.g_pa_effective = std::min(g_pa_max, p_cap_link / p_in);
        out.transmit = conjugate_retransmit(received, (1.0 - gamma) * out.g_pa_effective);
        return out;
    }

    LinkChannels build_link_channels(const Scenario &scenario, std::size_t ue_index, Backend backend)
    {
        const NodeSpec &ue = scenario.ues.at(ue_index);
        const FrequencyEntry &band = scenario.band(ue_index);
        const double beta = scenario.control.beta;
        const double c = scenario.constants.c;

        LinkChannels out;
        out.link_id = ue.link_id;
        out.bs_tx = node_tx_array(scenario.bs);
        out.bs_rx = node_rx_array(scenario.bs);
        out.ue_tx = node_tx_array(ue);
        out.ue_rx = node_rx_array(ue);
        out.downlink = build_channel(out.bs_tx, out.ue_rx, band.f_dl, beta, scenario.pattern, c,
                                     LinkDirection::downlink, ue.link_id, backend);
        out.uplink = build_channel(out.ue_tx, out.bs_rx, band.f_ul, beta, scenario.pattern, c, LinkDirection::uplink,
                                   ue.link_id, backend);
        return out;
    }

    std::uint64_t link_seed(std::uint64_t scenario_seed, int link_id)
    {
        // splitmix64 finalizer over (seed, link id).
        std::uint64_t z = scenario_seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(link_id) + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    ResonanceEngine::ResonanceEngine(Scenario scenario, EngineOptions options)
        : scenario_(std::move(scenario)), options_(options)
    {
        links_.reserve(scenario_.ues.size());
        for (std::size_t k = 0; k < scenario_.ues.size(); ++k)
            links_.push_back(build_link_channels(scenario_, k, options_.backend));
    }

    double ResonanceEngine::link_power_cap() const
    {
        return scenario_.control.p_cap_total / static_cast<double>(scenario_.ues.size());
    }

    LinkState ResonanceEngine::initial_state(std::size_t index) const
    {
        const LinkChannels &link = links_.at(index);
        LinkState state;
        state.bs_amplitudes = initial_excitation(link.bs_tx.size(), link_power_cap(), scenario_.control.init_phase,
                                                 link_seed(scenario_.control.init_seed, link.link_id));
        state.ue_amplitudes = CVector::Zero(static_cast<Eigen::Index>(link.ue_tx.size()));
        return state;
    }

    std::pair<LinkState, IterationRecord> ResonanceEngine::step(std::size_t index, const LinkState &state) const
    {
        const LinkChannels &link = links_.at(index);
        const ControlParams &ctl = scenario_.control;

        IterationRecord rec;
        rec.iteration = state.iteration + 1;
        rec.p_bs_tx = state.bs_amplitudes.squaredNorm();

        CVector ue_rx;
        kernels::propagate(options_.backend, link.downlink.entries, state.bs_amplitudes, ue_rx);
        rec.p_ue_rx = ue_rx.squaredNorm();

        CVector ue_tx = conjugate_retransmit(ue_rx, 1.0 - ctl.alpha);
        rec.p_ue_tx = ue_tx.squaredNorm();

        CVector bs_rx;
        kernels::propagate(options_.backend, link.uplink.entries, ue_tx, bs_rx);
        rec.p_bs_rx = bs_rx.squaredNorm();

        const double amp_in = (1.0 - ctl.gamma) * rec.p_bs_rx;
        rec.loss = amp_in / rec.p_bs_tx;
        rec.gain = state.iteration == 0 ? std::numeric_limits<double>::quiet_NaN() : rec.p_bs_tx / state.amp_input_w;

        AmplifierOutput amp = bs_amplify(bs_rx, ctl.gamma, link_power_cap(), ctl.g_pa_max);
        rec.g_pa_effective = amp.g_pa_effective;

        LinkState next;
        next.bs_amplitudes = std::move(amp.transmit);
        next.ue_amplitudes = std::move(ue_tx);
        next.iteration = rec.iteration;
        next.amp_input_w = amp_in;
        return {std::move(next), rec};
    }

    ResonanceTrace ResonanceEngine::run_link(std::size_t index) const
    {
        const ControlParams &ctl = scenario_.control;
        ResonanceTrace trace;
        trace.link_id = links_.at(index).link_id;

        LinkState state = initial_state(index);
        double previous_loss = 0.0;
        int passes = 0;
        while (state.iteration < ctl.max_iters)
        {
            std::pair<LinkState, IterationRecord> out;
            try
            {
                out = step(index, state);
            }
            catch (const DarkLinkError &)
            {
                if (trace.reseeded)
                    throw;
                trace.reseeded = true;
                state.bs_amplitudes = initial_excitation(
                    state.bs_amplitudes.size(), link_power_cap(), InitPhase::random,
                    link_seed(ctl.init_seed, trace.link_id) + 1);
                state.amp_input_w = 0.0;
                out = step(index, state);
                // The re-seeded excitation did not come from the amplifier.
                out.second.gain = std::numeric_limits<double>::quiet_NaN();
            }
            auto &[next, rec] = out;
            if (options_.keep_history)
                trace.history.push_back({state.bs_amplitudes, next.ue_amplitudes});

            const double change = std::abs(rec.loss - previous_loss) / std::max(rec.loss, DBL_MIN);
            passes = change < ctl.conv_tol ? passes + 1 : 0;
            previous_loss = rec.loss;
            trace.records.push_back(rec);
            state = std::move(next);

            if (passes >= ctl.conv_window)
            {
                const int first = rec.iteration - ctl.conv_window + 1;
                trace.iterations_to_converge = first;
                for (auto &r : trace.records)
                    r.converged = r.iteration >= first;
                break;
            }
        }
        trace.final_state = std::move(state);
        return trace;
    }

    std::vector<ResonanceTrace> ResonanceEngine::run() const
    {
        std::vector<ResonanceTrace> out;
        out.reserve(links_.size());
        for (std::size_t k = 0; k < links_.size(); ++k)
            out.push_back(run_link(k));
        return out;
    }
}
