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

#include "resbeam/experiments.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

namespace resbeam
{
    std::optional<TimeModel> parse_time_model(const std::string &name)
    {
        if (name == "literal")
            return TimeModel::literal;
        if (name == "physical")
            return TimeModel::physical;
        return std::nullopt;
    }

    std::string to_string(TimeModel model) { return model == TimeModel::literal ? "literal" : "physical"; }

    double resonance_time(std::span<const double> distances_m, std::span<const int> iterations, double c,
                          TimeModel model)
    {
        if (distances_m.size() != iterations.size() || distances_m.empty())
            throw std::invalid_argument("resonance_time: need one iteration count per distance");
        double worst = 0.0;
        for (std::size_t k = 0; k < distances_m.size(); ++k)
        {
            const double l = distances_m[k];
            const double i = iterations[k];
            const double t = model == TimeModel::literal ? (2.0 * l + i) / c : i * (2.0 * l) / c;
            worst = std::max(worst, t);
        }
        return worst;
    }

    bool SweepPoint::all_converged() const
    {
        return std::all_of(converged.begin(), converged.end(), [](bool b) { return b; });
    }

    SweepPoint evaluate_point(const Scenario &scenario, std::string label, double value)
    {
        const ResonanceEngine engine(scenario);
        const auto traces = engine.run();

        SweepPoint pt;
        pt.label = std::move(label);
        pt.value = value;
        std::vector<LinkPowers> powers;
        for (std::size_t k = 0; k < traces.size(); ++k)
        {
            const auto &link = engine.link(k);
            pt.links.push_back(compute_link_metrics(scenario, traces[k], link.bs_rx.size(), link.ue_rx.size()));
            pt.iterations.push_back(traces[k].iteration_count());
            pt.converged.push_back(traces[k].converged());
            pt.distances.push_back((scenario.ues[k].position - scenario.bs.position).norm());
            powers.push_back(link_powers(traces[k].last()));
        }
        pt.total_efficiency = efficiencies(powers).eta_dl;
        const double c = scenario.constants.c;
        pt.time_literal_s = resonance_time(pt.distances, pt.iterations, c, TimeModel::literal);
        pt.time_physical_s = resonance_time(pt.distances, pt.iterations, c, TimeModel::physical);
        return pt;
    }

    namespace
    {
        template <class Make>
        SweepResult run_sweep(std::string parameter, std::size_t count, Make make)
        {
            SweepResult out;
            out.parameter = std::move(parameter);
            out.points.resize(count);
            std::vector<std::exception_ptr> errors(count);
            const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
            for (std::ptrdiff_t i = 0; i < n; ++i)
            {
                try
                {
                    out.points[static_cast<std::size_t>(i)] = make(static_cast<std::size_t>(i));
                }
                catch (...)
                {
                    errors[static_cast<std::size_t>(i)] = std::current_exception();
                }
            }
            for (const auto &e : errors)
                if (e)
                    std::rethrow_exception(e);
            return out;
        }
    }

    Scenario with_ue_range(const Scenario &base, double distance)
    {
        if (!(distance > 0.0))
            throw std::invalid_argument("with_ue_range: distance must be positive");
        Scenario s = base;
        for (auto &ue : s.ues)
            ue.position = s.bs.position + distance * (ue.position - s.bs.position).normalized();
        return s;
    }

    Scenario with_array_size(const Scenario &base, int rows, int cols)
    {
        if (rows < 1 || cols < 1)
            throw std::invalid_argument("with_array_size: size must be at least 1x1");
        Scenario s = base;
        for (LatticeSpec *l : {&s.bs.tx, &s.bs.rx})
        {
            l->rows = rows;
            l->cols = cols;
        }
        for (auto &ue : s.ues)
            for (LatticeSpec *l : {&ue.tx, &ue.rx})
            {
                l->rows = rows;
                l->cols = cols;
            }
        return s;
    }

    Scenario with_bs_position(const Scenario &base, double x, double z_ue)
    {
        if (base.ues.size() != 2)
            throw std::invalid_argument("with_bs_position: needs exactly two UEs");
        Scenario s = base;
        s.bs.position = Vec3(x, 0.0, 0.0);
        s.ues[0].position = Vec3(2.0, 0.0, z_ue);
        s.ues[1].position = Vec3(-2.0, 0.0, z_ue);
        for (auto &ue : s.ues)
            ue.normal = (s.bs.position - ue.position).normalized();
        return s;
    }

    Scenario frequency_symmetrized(const Scenario &base, int reference_link)
    {
        Scenario s = base;
        const FrequencyEntry ref = base.plan.at(reference_link);
        for (auto &e : s.plan.entries)
        {
            e.f_dl = ref.f_dl;
            e.f_ul = ref.f_ul;
        }
        apply_default_spacings(s, true);
        return s;
    }

    SweepResult distance_sweep(const Scenario &base, std::span<const double> distances)
    {
        return run_sweep("distance_m", distances.size(), [&](std::size_t i) {
            return evaluate_point(with_ue_range(base, distances[i]), "distance", distances[i]);
        });
    }

    SweepResult array_size_sweep(const Scenario &base, std::span<const std::pair<int, int>> sizes)
    {
        return run_sweep("array_size", sizes.size(), [&](std::size_t i) {
            const auto [r, c] = sizes[i];
            return evaluate_point(with_array_size(base, r, c), std::to_string(r) + "x" + std::to_string(c),
                                  static_cast<double>(r) * c);
        });
    }

    SweepResult bs_position_sweep(const Scenario &base, std::span<const double> xs, double z_ue)
    {
        return run_sweep("bs_x_m", xs.size(), [&](std::size_t i) {
            return evaluate_point(with_bs_position(base, xs[i], z_ue), "bs_x", xs[i]);
        });
    }
}
