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

#ifndef RESBEAM_GAIN_PATTERN_HPP
#define RESBEAM_GAIN_PATTERN_HPP

#include <cmath>

namespace resbeam
{
    /// Hemispherical element pattern G(psi) = g_max * cos^q(psi), zero behind the element.
    struct GainPattern
    {
        double g_max = std::pow(10.0, 0.497); // 4.97 dBi
        double q = 1.0;

        bool operator==(const GainPattern &) const = default;

        // Gain from the cosine of the angle between element normal and direction.
        double from_cosine(double cos_angle) const
        {
            if (!(cos_angle > 0.0))
                return 0.0;
            if (q == 1.0)
                return g_max * cos_angle;
            return g_max * std::pow(cos_angle, q);
        }
    };
}

#endif
