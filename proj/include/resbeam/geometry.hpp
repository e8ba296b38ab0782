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

#ifndef RESBEAM_GEOMETRY_HPP
#define RESBEAM_GEOMETRY_HPP

#include "resbeam/types.hpp"

#include <cstddef>
#include <vector>

namespace resbeam
{
    struct LatticeSpec;
    struct NodeSpec;

    // Planar rectangular lattice. Element (r, c) sits at index r * cols + c.
    struct ArrayGeometry
    {
        std::vector<Vec3> element_positions;
        Vec3 center = Vec3::Zero();
        Vec3 normal = Vec3::UnitZ();
        Vec3 axis_u = Vec3::UnitX(); // Column direction
        Vec3 axis_v = Vec3::UnitY(); // Row direction
        double spacing = 0.0;
        int rows = 0;
        int cols = 0;

        std::size_t size() const { return element_positions.size(); }
    };

    // Deterministic in-plane axes completing `normal` to a right-handed frame.
    // For a +z normal this yields u = +x, v = +y.
    void lattice_axes(const Vec3 &normal, Vec3 &axis_u, Vec3 &axis_v);

    /// Centered rows x cols lattice in the plane orthogonal to `normal`.
    /// Throws std::invalid_argument on empty lattice, non-positive spacing or zero normal.
    ArrayGeometry build_planar_array(int rows, int cols, double spacing, const Vec3 &center, const Vec3 &normal);

    ArrayGeometry node_tx_array(const NodeSpec &node);
    ArrayGeometry node_rx_array(const NodeSpec &node);

    struct RetroCheck
    {
        double ratio_spacing = 0.0;    // d_rx / d_tx
        double ratio_wavelength = 0.0; // lambda_in / lambda_out
        double residual = 0.0;         // |ratio_spacing - ratio_wavelength| / ratio_wavelength
        bool pass = false;
    };

    // Retro-direction condition d_rx / d_tx = lambda_in / lambda_out.
    RetroCheck check_retro_condition(double d_rx, double d_tx, double lambda_in, double lambda_out, double tol);

    // Output frequency that satisfies the retro-direction condition for a node
    // receiving at f_ul with the given spacings.
    double derive_dl_frequency(double f_ul, double d_rx, double d_tx);
}

#endif
