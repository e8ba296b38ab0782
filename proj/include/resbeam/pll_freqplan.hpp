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

#ifndef RESBEAM_PLL_FREQPLAN_HPP
#define RESBEAM_PLL_FREQPLAN_HPP

#include "resbeam/errors.hpp"
#include "resbeam/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace resbeam
{
    // Frequency plan of one phase-conjugating PLL transponder. f_bm only feeds
    // the demodulation branch and takes no part in the conjugation algebra.
    struct PllConfig
    {
        double f_ref = 100e6;
        std::int64_t n1 = 1;
        std::int64_t n2 = 1;
        double f_dm = 0.0;
        double f_bm = 0.0;
        double f_um = 0.0;
    };

    class InfeasiblePlanError : public Error
    {
    public:
        using Error::Error;
    };

    class DividerSearchError : public Error
    {
    public:
        DividerSearchError(const std::string &message, double nearest_frequency)
            : Error(message), nearest_frequency_(nearest_frequency) {}

        // Output frequency reached by the best ratio inside the denominator bound.
        double nearest_frequency() const noexcept { return nearest_frequency_; }

    private:
        double nearest_frequency_;
    };

    /// Locked-loop output (n1/n2) f_ref + f_dm + f_um - f_in.
    /// Throws InfeasiblePlanError when the result is not positive.
    double pll_output_frequency(const PllConfig &cfg, double f_in);

    /// -phi_in wrapped to (-pi, pi].
    double conjugate_phase(double phi_in);

    struct DividerRatio
    {
        std::int64_t n1 = 1;
        std::int64_t n2 = 1;

        double value() const { return static_cast<double>(n1) / static_cast<double>(n2); }
        bool operator==(const DividerRatio &) const = default;
    };

    inline constexpr std::int64_t kMaxDividerDenominator = 1'000'000;

    /// Reduced n1/n2 that maps f_in to f_out within 1 Hz, found by continued-fraction
    /// best approximation with denominator <= max_denominator.
    DividerRatio solve_divider_product(double f_in, double f_out, double f_dm, double f_um, double f_ref,
                                       std::int64_t max_denominator = kMaxDividerDenominator);

    struct Band
    {
        std::string label; // e.g. "DL1", "UL2"
        int link_id = 0;
        double center = 0.0;
        double low = 0.0;
        double high = 0.0;
    };

    // Pairwise interval overlap of all DL and UL sub-bands. The conflict relation
    // is stored as a symmetric, irreflexive matrix.
    struct BandPlanReport
    {
        std::vector<Band> bands;
        std::vector<std::vector<bool>> conflict;

        bool overlaps(std::size_t i, std::size_t j) const { return conflict.at(i).at(j); }
        bool clean() const;
        // Conflicting pairs with i < j.
        std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
    };

    BandPlanReport validate_fdma_plan(const FrequencyPlan &plan);
}

#endif
