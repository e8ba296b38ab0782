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

#include "generators.hpp"

#include "resbeam/channel.hpp"
#include "resbeam/experiments.hpp"
#include "resbeam/kernels.hpp"
#include "resbeam/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace resbeam;

namespace
{
    constexpr double kC = 299792458.0;
}

TEST_CASE("effective aperture")
{
    CHECK(effective_aperture(M_PI, kC / 29e9) == doctest::Approx(2.672e-5).epsilon(1e-3));
    CHECK(effective_aperture(4 * M_PI, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(effective_aperture(2.0, 0.02) == doctest::Approx(4 * effective_aperture(2.0, 0.01)).epsilon(1e-15));
}

TEST_CASE("power density and field strength")
{
    CHECK(power_density_from_rx(2.672e-5, 2.672e-5) == 1.0);
    CHECK(power_density_from_rx(0.0, 1e-5) == 0.0);
    const std::vector<double> p{1.0, 4.0, 0.0, 2.0};
    const auto s = power_density_from_rx(p, 0.5);
    CHECK(s == std::vector<double>{2.0, 8.0, 0.0, 4.0});
    const std::vector<double> apertures{1.0, 2.0, 4.0, 8.0};
    CHECK(power_density_from_rx(p, apertures) == std::vector<double>{1.0, 2.0, 0.0, 0.25});

    CHECK(efield_from_density(1.0, 377.0) == doctest::Approx(27.459).epsilon(1e-4));
    CHECK(efield_from_density(1.0, 377.0) == doctest::Approx(std::sqrt(754.0)).epsilon(1e-15));
    CHECK(efield_from_density(0.0, 377.0) == 0.0);
    CHECK(efield_from_density(12.0, 377.0) == doctest::Approx(2 * efield_from_density(3.0, 377.0)).epsilon(1e-15));

    const auto f = field_quantities(1e-6, M_PI, kC / 29e9, 376.730313668);
    CHECK(f.aperture == effective_aperture(M_PI, kC / 29e9));
    CHECK(f.power_density == doctest::Approx(1e-6 / f.aperture).epsilon(1e-15));
    CHECK(f.efield == doctest::Approx(std::sqrt(2 * 376.730313668 * f.power_density)).epsilon(1e-15));
}

TEST_CASE("noise model")
{
    const PhysicalConstants k;
    ControlParams c;
    const auto n = noise_variance(k, c);
    CHECK(n.sigma_sq == doctest::Approx(1.6208e-11).epsilon(1e-4));
    CHECK(n.sigma_sq_field == doctest::Approx(1.222e-8).epsilon(1e-3));
    CHECK(n.sigma_sq_field == doctest::Approx(2 * k.z0 * n.sigma_sq).epsilon(1e-15));
    CHECK(n.noise_figure == doctest::Approx(db_to_linear(6.0)).epsilon(1e-15));
    CHECK(n.bandwidth == 1e9);
    c.noise_figure_db = 0.0;
    CHECK(noise_variance(k, c).sigma_sq == doctest::Approx(4.071e-12).epsilon(1e-3));
    c.bandwidth = 1e-30;
    CHECK(noise_variance(k, c).sigma_sq < 1e-40);
}

TEST_CASE("SNR")
{
    const auto n = noise_variance(PhysicalConstants{}, ControlParams{});
    const double signal = 1000 * n.sigma_sq;
    CHECK(snr_db(signal, 1, 1.0, n) == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(snr_db(1.6208e-8, 1, 1.0, n) == doctest::Approx(30.0).epsilon(1e-4));
    CHECK(snr_db(signal, 2, 1.0, n) == doctest::Approx(30.0 - 10 * std::log10(2.0)).epsilon(1e-12));
    CHECK(snr_db(signal, 1, 0.0, n) == -std::numeric_limits<double>::infinity());
    CHECK(snr_db(0.0, 4, 0.5, n) == -std::numeric_limits<double>::infinity());
    CHECK_THROWS(snr_db(signal, 0, 1.0, n));
    double prev = -std::numeric_limits<double>::infinity();
    for (double p = 1e-15; p < 1.0; p *= 3.7)
    {
        const double v = snr_db(p, 16, 0.005, n);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("spectral efficiency")
{
    CHECK(spectral_efficiency(3.0, 3.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(spectral_efficiency(13.0, 3.0) == doctest::Approx(3.4594).epsilon(1e-4));
    CHECK(spectral_efficiency(13.0, 3.0) == doctest::Approx(std::log2(11.0)).epsilon(1e-14));
    CHECK(spectral_efficiency(-std::numeric_limits<double>::infinity(), 3.0) == 0.0);
    double prev = 0.0;
    for (double s = -60; s < 80; s += 0.37)
    {
        const double v = spectral_efficiency(s, 3.0);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("efficiencies")
{
    const LinkPowers lossless{1.0, 1.0, 1.0, 1.0};
    auto e = efficiencies(std::span<const LinkPowers>(&lossless, 1));
    CHECK(e.eta_dl == 1.0);
    CHECK(e.eta_ul == 1.0);

    const std::vector<LinkPowers> two{{10.0, 6.0, 2.0, 1.0}, {10.0, 4.0, 2.0, 0.5}};
    e = efficiencies(two);
    CHECK(e.eta_dl == doctest::Approx(0.5));
    CHECK(e.eta_ul == doctest::Approx(0.375));

    const LinkPowers dead{0.0, 0.0, 1.0, 1.0};
    CHECK_THROWS_AS(efficiencies(std::span<const LinkPowers>(&dead, 1)), std::domain_error);
    const LinkPowers mute{1.0, 1.0, 0.0, 0.0};
    CHECK_THROWS_AS(efficiencies(std::span<const LinkPowers>(&mute, 1)), std::domain_error);
}

TEST_CASE("single-element link efficiency equals the channel power gain")
{
    Scenario s;
    s.pattern = {M_PI, 0.0};
    s.bs.role = NodeRole::bs;
    s.bs.tx = s.bs.rx = {1, 1, 0.0};
    NodeSpec ue;
    ue.link_id = 1;
    ue.position = Vec3(0, 0, 2);
    ue.normal = -Vec3::UnitZ();
    ue.tx = ue.rx = {1, 1, 0.0};
    s.ues.push_back(ue);
    s.plan.entries = {{1, 29e9, 29e9}};
    apply_default_spacings(s, true);

    const auto trace = ResonanceEngine(s).run_link(0);
    const auto m = compute_link_metrics(s, trace, 1, 1);
    const cd h = channel_entry(Vec3::Zero(), Vec3::UnitZ(), ue.position, ue.normal, kC / 29e9, 2.0, s.pattern);
    CHECK(m.eta_dl == doctest::Approx(std::norm(h)).epsilon(1e-12));
    CHECK(m.eta_dl == doctest::Approx(1.670e-6).epsilon(1e-3));
    CHECK(m.eta_ul == doctest::Approx(std::norm(h)).epsilon(1e-12));
    CHECK(m.p_harvested == doctest::Approx(s.control.alpha * trace.last().p_ue_rx).epsilon(1e-15));
}

TEST_CASE("density times aperture reproduces the channel power gain")
{
    gen::Rng rng(77);
    const GainPattern pattern;
    for (int t = 0; t < 300; ++t)
    {
        const double lambda = kC / rng.uniform(20e9, 40e9);
        const Vec3 tx = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        const Vec3 tx_n = Vec3::UnitZ();
        const Vec3 rx = tx + rng.uniform(0.2, 5.0) * rng.cone_direction(75.0);
        const Vec3 rx_n = -rng.cone_direction(60.0);
        const double p = rng.uniform(0.1, 10.0);

        const kernels::Propagation prop{lambda, 2.0, pattern};
        const double density = p * std::norm(kernels::field_coefficient(tx, tx_n, rx, prop));
        const double cos_rx = rx_n.dot(tx - rx) / (tx - rx).norm();
        const double aperture = effective_aperture(pattern.from_cosine(cos_rx), lambda);
        const cd h = channel_entry(tx, tx_n, rx, rx_n, lambda, 2.0, pattern);
        CHECK(density * aperture == doctest::Approx(p * std::norm(h)).epsilon(1e-9));
    }
}

TEST_CASE("link efficiency is the Rayleigh quotient of the downlink channel")
{
    const Scenario s = with_array_size(default_two_ue_scenario(), 6, 6);
    const ResonanceEngine engine(s, {Backend::parallel, true});
    for (std::size_t k = 0; k < engine.link_count(); ++k)
    {
        const auto trace = engine.run_link(k);
        const auto &h = engine.link(k).downlink.entries;
        const auto m = compute_link_metrics(s, trace, engine.link(k).bs_rx.size(), engine.link(k).ue_rx.size());
        const Eigen::VectorXcd x = trace.history.back().bs_tx;
        const Eigen::VectorXcd y = h.transpose() * x;
        CHECK(m.eta_dl == doctest::Approx(y.squaredNorm() / x.squaredNorm()).epsilon(1e-12));
        CHECK(m.eta_dl >= 0.0);
        CHECK(m.eta_dl <= 1.0);
        CHECK(m.eta_ul >= 0.0);
        CHECK(m.eta_ul <= 1.0);
        CHECK(m.se_dl >= 0.0);
        CHECK(m.se_ul >= 0.0);
    }
}

TEST_CASE("downlink spectral efficiency exceeds uplink at steady state")
{
    const Scenario s = with_array_size(default_two_ue_scenario(), 16, 16);
    const ResonanceEngine engine(s);
    const auto traces = engine.run();
    for (std::size_t k = 0; k < traces.size(); ++k)
    {
        const auto m = compute_link_metrics(s, traces[k], engine.link(k).bs_rx.size(), engine.link(k).ue_rx.size());
        CHECK(m.se_dl > m.se_ul);
        CHECK(m.snr_dl_db > m.snr_ul_db);
        CHECK_FALSE(m.snr_dl_floor);
        CHECK_FALSE(m.snr_ul_floor);
    }
}
