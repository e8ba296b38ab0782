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
#include "reference.hpp"

#include "resbeam/pll_freqplan.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace resbeam;

TEST_CASE("PLL output frequency")
{
    PllConfig cfg;
    cfg.f_ref = 100e6;
    cfg.n1 = 590;
    cfg.n2 = 1;
    CHECK(pll_output_frequency(cfg, 29e9) == 30e9);
    // Self-conjugate point: input at half the synthesized frequency.
    CHECK(pll_output_frequency(cfg, 29.5e9) == 29.5e9);

    cfg.n1 = 588;
    cfg.f_dm = 100e6;
    cfg.f_um = 100e6;
    CHECK(pll_output_frequency(cfg, 29e9) == 30e9);

    // f_bm takes no part in the output.
    cfg.f_bm = 123e6;
    CHECK(pll_output_frequency(cfg, 29e9) == 30e9);
}

TEST_CASE("infeasible PLL plans")
{
    PllConfig cfg;
    cfg.n1 = 1;
    cfg.n2 = 1;
    CHECK_THROWS_AS(pll_output_frequency(cfg, 1e9), InfeasiblePlanError);
    cfg.n2 = 0;
    CHECK_THROWS_AS(pll_output_frequency(cfg, 1e6), InfeasiblePlanError);
}

TEST_CASE("output map is an involution on integer-hertz plans")
{
    gen::Rng rng(3);
    for (int i = 0; i < 500; ++i)
    {
        PllConfig cfg;
        cfg.f_ref = 1e6 * rng.integer(1, 200);
        cfg.n1 = rng.integer(100, 100000);
        cfg.n2 = rng.integer(1, 50);
        cfg.n1 *= cfg.n2; // keep (n1/n2) f_ref an integer number of hertz
        cfg.f_dm = 1e6 * rng.integer(0, 500);
        cfg.f_um = 1e6 * rng.integer(0, 500);
        const double total = static_cast<double>(cfg.n1 / cfg.n2) * cfg.f_ref + cfg.f_dm + cfg.f_um;
        const double f_in = std::floor(rng.uniform(1.0, total - 1.0));
        const double out = pll_output_frequency(cfg, f_in);
        CHECK(pll_output_frequency(cfg, out) == f_in);
    }
}

TEST_CASE("conjugate phase")
{
    CHECK(conjugate_phase(0.0) == 0.0);
    CHECK(conjugate_phase(M_PI / 3) == doctest::Approx(-M_PI / 3).epsilon(1e-15));
    CHECK(conjugate_phase(3 * M_PI / 2) == doctest::Approx(M_PI / 2).epsilon(1e-15));
    CHECK(conjugate_phase(M_PI) == doctest::Approx(M_PI));
    CHECK(conjugate_phase(-M_PI) == doctest::Approx(M_PI));

    gen::Rng rng(4);
    for (int i = 0; i < 1000; ++i)
    {
        const double phi = rng.uniform(-50.0, 50.0);
        const double c = conjugate_phase(phi);
        CHECK(c > -M_PI);
        CHECK(c <= M_PI);
        // Conjugation holds modulo 2 pi ...
        CHECK(std::abs(std::remainder(c + phi, 2 * M_PI)) < 1e-12);
        // ... and applying it twice returns the input modulo 2 pi.
        CHECK(std::abs(std::remainder(conjugate_phase(c) - phi, 2 * M_PI)) < 1e-12);
    }
}

TEST_CASE("divider search")
{
    CHECK(solve_divider_product(29e9, 30e9, 0, 0, 100e6) == DividerRatio{590, 1});
    CHECK(solve_divider_product(7e9, 7e9, 0, 0, 14e9) == DividerRatio{1, 1});
    CHECK(solve_divider_product(28.517e9, 29.5e9, 0, 0, 1e6) == DividerRatio{58017, 1});
    CHECK(solve_divider_product(28.517e9, 29.5e9, 0, 0, 100e6) == DividerRatio{58017, 100});
    CHECK(solve_divider_product(29e9, 30e9, 100e6, 100e6, 100e6) == DividerRatio{588, 1});
}

TEST_CASE("divider search reports the nearest frequency when the bound is too tight")
{
    // (59e9 + 1) / 7 is not an integer and the bound admits integers only.
    try
    {
        solve_divider_product(29e9, 30e9 + 1, 0, 0, 7.0, 1);
        FAIL("expected DividerSearchError");
    }
    catch (const DividerSearchError &e)
    {
        CHECK(std::abs(e.nearest_frequency() - (30e9 + 1)) <= 3.5);
        CHECK(std::abs(e.nearest_frequency() - (30e9 + 1)) > 1.0);
    }
    CHECK_THROWS_AS(solve_divider_product(29e9, 30e9, 60e9, 0, 100e6), InfeasiblePlanError);
}

TEST_CASE("successful divider searches reproduce the target within 1 Hz")
{
    gen::Rng rng(8);
    int successes = 0;
    for (int i = 0; i < 300; ++i)
    {
        const double f_ref = 1e6 * rng.integer(1, 100);
        const double f_in = 1e3 * rng.integer(1'000'000, 40'000'000);
        const double f_out = 1e3 * rng.integer(1'000'000, 40'000'000);
        try
        {
            const DividerRatio r = solve_divider_product(f_in, f_out, 0, 0, f_ref);
            CHECK(std::gcd(r.n1, r.n2) == 1);
            CHECK(r.n2 <= kMaxDividerDenominator);
            PllConfig cfg;
            cfg.f_ref = f_ref;
            cfg.n1 = r.n1;
            cfg.n2 = r.n2;
            CHECK(std::abs(pll_output_frequency(cfg, f_in) - f_out) <= 1.0);
            ++successes;
        }
        catch (const DividerSearchError &)
        {
        }
    }
    CHECK(successes > 250);
}

TEST_CASE("FDMA overlap on the reference plan")
{
    FrequencyPlan plan;
    plan.entries = {{1, 28.517e9, 29.5e9}, {2, 29e9, 30e9}};
    plan.bandwidth = 1e9;
    const auto report = validate_fdma_plan(plan);
    REQUIRE(report.bands.size() == 4);
    CHECK(report.bands[0].label == "DL1");
    CHECK(report.bands[0].low == doctest::Approx(28.017e9));
    CHECK(report.bands[0].high == doctest::Approx(29.017e9));
    CHECK(report.overlaps(0, 2)); // DL1 vs DL2
    CHECK_FALSE(report.clean());
    // UL1 [29, 30] and DL2 [28.5, 29.5] overlap; DL2 and UL2 only touch at 29.5 GHz.
    CHECK(report.overlaps(1, 2));
    CHECK_FALSE(report.overlaps(2, 3));

    plan.bandwidth = 100e6;
    CHECK(validate_fdma_plan(plan).clean());

    FrequencyPlan single;
    single.entries = {{2, 29e9, 30e9}};
    single.bandwidth = 1e9;
    CHECK(validate_fdma_plan(single).clean());
}

TEST_CASE("FDMA report agrees with a brute-force interval check and is symmetric")
{
    gen::Rng rng(9);
    for (int t = 0; t < 200; ++t)
    {
        FrequencyPlan plan;
        const long long bw = 1'000'000LL * rng.integer(1, 400);
        plan.bandwidth = static_cast<double>(bw);
        const int links = rng.integer(1, 5);
        for (int k = 0; k < links; ++k)
            plan.entries.push_back({k + 1, 1e6 * rng.integer(27000, 31000), 1e6 * rng.integer(27000, 31000)});
        const auto report = validate_fdma_plan(plan);
        const std::size_t n = report.bands.size();
        REQUIRE(n == static_cast<std::size_t>(2 * links));
        for (std::size_t i = 0; i < n; ++i)
        {
            CHECK_FALSE(report.overlaps(i, i));
            for (std::size_t j = 0; j < n; ++j)
            {
                CHECK(report.overlaps(i, j) == report.overlaps(j, i));
                if (i == j)
                    continue;
                const auto ci = static_cast<long long>(report.bands[i].center);
                const auto cj = static_cast<long long>(report.bands[j].center);
                const bool expected = ref::intervals_share_interior(2 * ci - bw, 2 * ci + bw, 2 * cj - bw, 2 * cj + bw);
                CHECK(report.overlaps(i, j) == expected);
            }
        }
    }
}
