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

#include "resbeam/pll_freqplan.hpp"

#include <cmath>
#include <sstream>

namespace resbeam
{
    double pll_output_frequency(const PllConfig &cfg, double f_in)
    {
        if (cfg.n1 < 1 || cfg.n2 < 1)
            throw InfeasiblePlanError("dividers n1 and n2 must be >= 1");
        if (!(cfg.f_ref > 0.0))
            throw InfeasiblePlanError("reference frequency must be positive");
        const double ratio = static_cast<double>(cfg.n1) / static_cast<double>(cfg.n2);
        const double f_out = ratio * cfg.f_ref + cfg.f_dm + cfg.f_um - f_in;
        if (!(f_out > 0.0))
        {
            std::ostringstream msg;
            msg << "PLL output frequency " << f_out << " Hz is not positive";
            throw InfeasiblePlanError(msg.str());
        }
        return f_out;
    }

    double conjugate_phase(double phi_in)
    {
        double phi = std::remainder(-phi_in, kTwoPi);
        if (phi <= -kPi)
            phi += kTwoPi;
        return phi;
    }

    namespace
    {
        // Best rational approximation p/q of x with q <= max_q (convergents plus the last semiconvergent).
        DividerRatio best_rational(double x, std::int64_t max_q)
        {
            std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
            double rest = x;
            for (int guard = 0; guard < 64; ++guard)
            {
                const double a_f = std::floor(rest);
                if (a_f > 9.0e15)
                    break;
                const auto a = static_cast<std::int64_t>(a_f);
                if (q1 != 0 && a > (max_q - q0) / q1)
                    break;
                const std::int64_t p2 = p0 + a * p1;
                const std::int64_t q2 = q0 + a * q1;
                p0 = p1;
                q0 = q1;
                p1 = p2;
                q1 = q2;
                const double frac = rest - a_f;
                if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) <= 1e-15 * std::abs(x) ||
                    frac <= 0.0)
                    return {p1, q1};
                rest = 1.0 / frac;
            }
            if (q1 == 0)
                return {p1, 1};
            const std::int64_t k = (max_q - q0) / q1;
            const DividerRatio conv{p1, q1};
            const DividerRatio semi{p0 + k * p1, q0 + k * q1};
            return std::abs(semi.value() - x) < std::abs(conv.value() - x) ? semi : conv;
        }
    }

    DividerRatio solve_divider_product(double f_in, double f_out, double f_dm, double f_um, double f_ref,
                                       std::int64_t max_denominator)
    {
        if (!(f_ref > 0.0))
            throw InfeasiblePlanError("reference frequency must be positive");
        if (max_denominator < 1)
            throw InfeasiblePlanError("denominator bound must be >= 1");
        const double target = (f_out + f_in - f_dm - f_um) / f_ref;
        if (!(target > 0.0))
            throw InfeasiblePlanError("required divider product is not positive");

        const DividerRatio r = best_rational(target, max_denominator);
        const double reached = r.value() * f_ref + f_dm + f_um - f_in;
        if (r.n1 < 1 || std::abs(reached - f_out) > 1.0)
        {
            std::ostringstream msg;
            msg.precision(17);
            msg << "no divider ratio with n2 <= " << max_denominator << " reaches " << f_out
                << " Hz within 1 Hz; nearest " << reached << " Hz";
            throw DividerSearchError(msg.str(), reached);
        }
        return r;
    }

    bool BandPlanReport::clean() const { return pairs().empty(); }

    std::vector<std::pair<std::size_t, std::size_t>> BandPlanReport::pairs() const
    {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < conflict.size(); ++i)
            for (std::size_t j = i + 1; j < conflict.size(); ++j)
                if (conflict[i][j])
                    out.emplace_back(i, j);
        return out;
    }

    BandPlanReport validate_fdma_plan(const FrequencyPlan &plan)
    {
        BandPlanReport report;
        const double half = 0.5 * plan.bandwidth;
        for (const auto &e : plan.entries)
        {
            const auto id = std::to_string(e.link_id);
            report.bands.push_back({"DL" + id, e.link_id, e.f_dl, e.f_dl - half, e.f_dl + half});
            report.bands.push_back({"UL" + id, e.link_id, e.f_ul, e.f_ul - half, e.f_ul + half});
        }
        const std::size_t n = report.bands.size();
        report.conflict.assign(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
            {
                const Band &a = report.bands[i];
                const Band &b = report.bands[j];
                // Touching edges do not conflict.
                const bool hit = a.high > b.low && b.high > a.low;
                report.conflict[i][j] = hit;
                report.conflict[j][i] = hit;
            }
        return report;
    }
}
