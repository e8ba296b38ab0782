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

#include "resbeam/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace resbeam
{
    CMatrix round_trip_operator(const ChannelMatrix &h_dl, const ChannelMatrix &h_ul)
    {
        // DL: y = H_dl^T x. UL after the UE conjugation: z = H_ul^T conj(y).
        // BS conjugation: x' ~ conj(z) = H_ul^H H_dl^T x.
        if (h_dl.rx_count() != h_ul.tx_count())
            throw std::invalid_argument("round_trip_operator: UE receive and transmit lattices differ in size");
        if (h_ul.rx_count() != h_dl.tx_count())
            throw std::invalid_argument("round_trip_operator: BS receive and transmit lattices differ in size");
        return h_ul.entries.adjoint() * h_dl.entries.transpose();
    }

    SteadyStatePrediction steady_state_mode(const ChannelMatrix &h_dl, const ChannelMatrix &h_ul, double alpha,
                                            double gamma)
    {
        const Eigen::MatrixXcd a = round_trip_operator(h_dl, h_ul);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, true);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("steady_state_mode: eigen-decomposition failed");

        const auto &values = solver.eigenvalues();
        std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
        for (Eigen::Index i = 0; i < values.size(); ++i)
            order[static_cast<std::size_t>(i)] = i;
        std::sort(order.begin(), order.end(),
                  [&](Eigen::Index x, Eigen::Index y) { return std::abs(values[x]) > std::abs(values[y]); });

        SteadyStatePrediction out;
        const Eigen::Index top = order.front();
        out.dominant_eigenvalue = values[top];
        const double mag = std::abs(values[top]);
        out.dominant_loss = (1.0 - alpha) * (1.0 - gamma) * mag * mag;
        out.bs_mode = solver.eigenvectors().col(top).normalized();
        out.gap = order.size() > 1 && mag > 0.0 ? std::abs(values[order[1]]) / mag : 0.0;
        out.degenerate = out.gap >= kDegenerateGap;
        return out;
    }
}
