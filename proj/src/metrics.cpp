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

#include "resbeam/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace resbeam
{
    double effective_aperture(double gain, double wavelength)
    {
        return gain * wavelength * wavelength / (4.0 * kPi);
    }

    double power_density_from_rx(double p_rx_element, double aperture) { return p_rx_element / aperture; }

    std::vector<double> power_density_from_rx(std::span<const double> p_rx, double aperture)
    {
        std::vector<double> out(p_rx.size());
        for (std::size_t i = 0; i < p_rx.size(); ++i)
            out[i] = p_rx[i] / aperture;
        return out;
    }

    std::vector<double> power_density_from_rx(std::span<const double> p_rx, std::span<const double> apertures)
    {
        if (p_rx.size() != apertures.size())
            throw std::invalid_argument("power_density_from_rx: size mismatch");
        std::vector<double> out(p_rx.size());
        for (std::size_t i = 0; i < p_rx.size(); ++i)
            out[i] = p_rx[i] / apertures[i];
        return out;
    }

    double efield_from_density(double s, double z0) { return std::sqrt(2.0 * z0 * s); }

    FieldQuantities field_quantities(double p_rx_element, double gain, double wavelength, double z0)
    {
        FieldQuantities q;
        q.aperture = effective_aperture(gain, wavelength);
        q.power_density = q.aperture > 0.0 ? power_density_from_rx(p_rx_element, q.aperture) : 0.0;
        q.efield = efield_from_density(q.power_density, z0);
        return q;
    }

    NoiseModel noise_variance(const PhysicalConstants &constants, const ControlParams &control)
    {
        NoiseModel n;
        n.kappa = constants.kappa;
        n.temperature = constants.temperature;
        n.bandwidth = control.bandwidth;
        n.noise_figure = db_to_linear(control.noise_figure_db);
        n.z0 = constants.z0;
        n.sigma_sq = n.kappa * n.temperature * n.bandwidth * n.noise_figure;
        n.sigma_sq_field = 2.0 * n.z0 * n.sigma_sq;
        return n;
    }

    double snr_db(double signal_power_total, std::size_t element_count, double tap, const NoiseModel &noise)
    {
        if (element_count == 0)
            throw std::invalid_argument("snr_db: element_count must be >= 1");
        const double numerator = tap * signal_power_total;
        if (!(numerator > 0.0))
            return -std::numeric_limits<double>::infinity();
        return linear_to_db(numerator / (static_cast<double>(element_count) * noise.sigma_sq));
    }

    double spectral_efficiency(double snr_db, double delta_db)
    {
        return std::log2(1.0 + db_to_linear(snr_db - delta_db));
    }

    LinkPowers link_powers(const IterationRecord &record)
    {
        return {record.p_bs_tx, record.p_ue_rx, record.p_ue_tx, record.p_bs_rx};
    }

    Efficiencies efficiencies(std::span<const LinkPowers> links)
    {
        double bs_tx = 0.0, ue_rx = 0.0, ue_tx = 0.0, bs_rx = 0.0;
        for (const auto &l : links)
        {
            bs_tx += l.p_bs_tx;
            ue_rx += l.p_ue_rx;
            ue_tx += l.p_ue_tx;
            bs_rx += l.p_bs_rx;
        }
        if (!(bs_tx > 0.0))
            throw std::domain_error("efficiencies: total BS transmit power is zero");
        if (!(ue_tx > 0.0))
            throw std::domain_error("efficiencies: total UE transmit power is zero");
        return {ue_rx / bs_tx, bs_rx / ue_tx};
    }

    LinkMetrics compute_link_metrics(const Scenario &scenario, const ResonanceTrace &trace, std::size_t bs_rx_count,
                                     std::size_t ue_rx_count)
    {
        const ControlParams &ctl = scenario.control;
        const NoiseModel noise = noise_variance(scenario.constants, ctl);
        const IterationRecord &r = trace.last();

        LinkMetrics m;
        m.link_id = trace.link_id;
        const LinkPowers p = link_powers(r);
        const Efficiencies eta = efficiencies(std::span<const LinkPowers>(&p, 1));
        m.eta_dl = eta.eta_dl;
        m.eta_ul = eta.eta_ul;
        m.snr_dl_db = snr_db(r.p_ue_rx, ue_rx_count, 1.0 - ctl.alpha, noise);
        m.snr_ul_db = snr_db(r.p_bs_rx, bs_rx_count, ctl.gamma, noise);
        m.snr_dl_floor = std::isinf(m.snr_dl_db);
        m.snr_ul_floor = std::isinf(m.snr_ul_db);
        m.se_dl = spectral_efficiency(m.snr_dl_db, ctl.delta_db);
        m.se_ul = spectral_efficiency(m.snr_ul_db, ctl.delta_db);
        m.p_harvested = ctl.alpha * r.p_ue_rx;
        return m;
    }
}
