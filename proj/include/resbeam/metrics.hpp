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

#ifndef RESBEAM_METRICS_HPP
#define RESBEAM_METRICS_HPP

#include "resbeam/resonance.hpp"
#include "resbeam/scenario.hpp"

#include <span>
#include <vector>

namespace resbeam
{
    struct FieldQuantities
    {
        double power_density = 0.0; // [W/m^2]
        double aperture = 0.0;      // [m^2]
        double efield = 0.0;        // [V/m]
    };

    // Effective capture area G lambda^2 / 4 pi.
    double effective_aperture(double gain, double wavelength);

    double power_density_from_rx(double p_rx_element, double aperture);
    std::vector<double> power_density_from_rx(std::span<const double> p_rx, double aperture);
    std::vector<double> power_density_from_rx(std::span<const double> p_rx, std::span<const double> apertures);

    // Peak field strength sqrt(2 Z0 S).
    double efield_from_density(double s, double z0);

    FieldQuantities field_quantities(double p_rx_element, double gain, double wavelength, double z0);

    struct NoiseModel
    {
        double sigma_sq = 0.0;          // kappa T B F_n [W]
        double sigma_sq_field = 0.0;    // 2 Z0 kappa T B F_n, field-amplitude convention [V^2]
        double kappa = 0.0;
        double temperature = 0.0;
        double bandwidth = 0.0;
        double noise_figure = 1.0;      // linear
        double z0 = 0.0;
    };

    NoiseModel noise_variance(const PhysicalConstants &constants, const ControlParams &control);

    /// 10 log10(tap * signal / (element_count * sigma_sq)). A zero numerator
    /// returns -infinity, which callers report as a flagged minimum.
    double snr_db(double signal_power_total, std::size_t element_count, double tap, const NoiseModel &noise);

    /// log2(1 + 10^(0.1 (snr_db - delta_db))).
    double spectral_efficiency(double snr_db, double delta_db);

    // Final round-trip powers of one link.
    struct LinkPowers
    {
        double p_bs_tx = 0.0;
        double p_ue_rx = 0.0;
        double p_ue_tx = 0.0;
        double p_bs_rx = 0.0;
    };

    LinkPowers link_powers(const IterationRecord &record);

    struct Efficiencies
    {
        double eta_dl = 0.0;
        double eta_ul = 0.0;
    };

    /// Sums over links: eta_DL = sum UE rx / sum BS tx, eta_UL = sum BS rx / sum UE tx.
    /// Throws std::domain_error on a zero denominator.
    Efficiencies efficiencies(std::span<const LinkPowers> links);

    struct LinkMetrics
    {
        int link_id = 0;
        double eta_dl = 0.0;
        double eta_ul = 0.0;
        double snr_dl_db = 0.0;
        double snr_ul_db = 0.0;
        double se_dl = 0.0;
        double se_ul = 0.0;
        double p_harvested = 0.0; // [W]
        bool snr_dl_floor = false; // -inf sentinel hit
        bool snr_ul_floor = false;
    };

    // Metrics of a link at the last iteration of its trace.
    LinkMetrics compute_link_metrics(const Scenario &scenario, const ResonanceTrace &trace, std::size_t bs_rx_count,
                                     std::size_t ue_rx_count);
}

#endif
