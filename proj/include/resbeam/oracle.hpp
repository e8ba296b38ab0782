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

#ifndef RESBEAM_ORACLE_HPP
#define RESBEAM_ORACLE_HPP

#include "resbeam/channel.hpp"

namespace resbeam
{
    // Steady state predicted from the spectrum of the round-trip operator.
    struct SteadyStatePrediction
    {
        double dominant_loss = 0.0;  // (1-alpha)(1-gamma) |lambda_1|^2, the steady loss coefficient
        CVector bs_mode;             // Unit-norm dominant eigenvector on the BS transmit lattice
        cd dominant_eigenvalue = 0.0;
        double gap = 0.0;            // |lambda_2| / |lambda_1|, 0 for a 1x1 operator
        bool degenerate = false;     // gap >= kDegenerateGap
    };

    inline constexpr double kDegenerateGap = 0.99;

    /// The two conjugations make a BS excitation x map linearly to
    /// A x with A = conj(H_ul)^T H_dl^T; this returns its dominant eigenpair by a
    /// dense complex eigen-decomposition. Throws std::invalid_argument on
    /// incompatible dimensions.
    SteadyStatePrediction steady_state_mode(const ChannelMatrix &h_dl, const ChannelMatrix &h_ul, double alpha,
                                            double gamma);

    // A itself, without the (1-alpha)(1-gamma) scaling.
    CMatrix round_trip_operator(const ChannelMatrix &h_dl, const ChannelMatrix &h_ul);
}

#endif
