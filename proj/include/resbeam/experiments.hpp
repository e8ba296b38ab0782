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

#ifndef RESBEAM_EXPERIMENTS_HPP
#define RESBEAM_EXPERIMENTS_HPP

#include "resbeam/metrics.hpp"
#include "resbeam/scenario.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace resbeam
{
    enum class TimeModel
    {
        literal,  // max_k (2 L_k + I_k) / c
        physical  // max_k I_k 2 L_k / c
    };

    std::optional<TimeModel> parse_time_model(const std::string &name);
    std::string to_string(TimeModel model);

    // Time to establish resonance over all links [s].
    double resonance_time(std::span<const double> distances_m, std::span<const int> iterations, double c,
                          TimeModel model);

    struct SweepPoint
    {
        std::string label;
        double value = 0.0;
        std::vector<LinkMetrics> links;
        std::vector<int> iterations;       // I_k (iterations run if not converged)
        std::vector<bool> converged;
        std::vector<double> distances;     // BS-UE center distance per link [m]
        double total_efficiency = 0.0;     // sum UE rx / sum BS tx at steady state
        double time_literal_s = 0.0;
        double time_physical_s = 0.0;

        double resonance_time(TimeModel model) const
        {
            return model == TimeModel::literal ? time_literal_s : time_physical_s;
        }
        bool all_converged() const;
    };

    struct SweepResult
    {
        std::string parameter;
        std::vector<SweepPoint> points; // Same order as the requested values
    };

    // Runs one scenario to steady state and summarizes it as a sweep row.
    SweepPoint evaluate_point(const Scenario &scenario, std::string label, double value);

    /// Moves every UE along its BS -> UE ray to each distance (orientation kept).
    SweepResult distance_sweep(const Scenario &base, std::span<const double> distances);

    /// Resizes every BS and UE lattice to rows x cols, spacings unchanged.
    SweepResult array_size_sweep(const Scenario &base, std::span<const std::pair<int, int>> sizes);

    /// BS at (x, 0, 0) for each x, UE 1 at (2, 0, z_ue), UE 2 at (-2, 0, z_ue),
    /// both UEs re-aimed at the BS. Needs exactly two UEs.
    SweepResult bs_position_sweep(const Scenario &base, std::span<const double> xs, double z_ue);

    // Puts every link on the bands of `reference_link` and re-derives the UE spacings.
    Scenario frequency_symmetrized(const Scenario &base, int reference_link);

    Scenario with_ue_range(const Scenario &base, double distance);
    Scenario with_array_size(const Scenario &base, int rows, int cols);
    Scenario with_bs_position(const Scenario &base, double x, double z_ue);
}

#endif
