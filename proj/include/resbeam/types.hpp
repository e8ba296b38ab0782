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

#ifndef RESBEAM_TYPES_HPP
#define RESBEAM_TYPES_HPP

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <complex>
#include <numbers>

namespace resbeam
{
    using cd = std::complex<double>;
    using Vec3 = Eigen::Vector3d;
    using CVector = Eigen::VectorXcd;

    // Row-major so that row m holds every coefficient leaving transmit element m
    using CMatrix = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    inline constexpr double kPi = std::numbers::pi;
    inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

    /// Selects between the OpenMP kernels and their serial reference.
    enum class Backend
    {
        serial,
        parallel
    };

    inline double db_to_linear(double db) { return std::pow(10.0, 0.1 * db); }
    inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
}

#endif
