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

#include "resbeam/geometry.hpp"

#include "resbeam/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace resbeam
{
    void lattice_axes(const Vec3 &normal, Vec3 &axis_u, Vec3 &axis_v)
    {
        const Vec3 n = normal.normalized();
        const Vec3 ref = std::abs(n.y()) < 0.9 ? Vec3::UnitY() : Vec3::UnitX();
        axis_u = ref.cross(n).normalized();
        axis_v = n.cross(axis_u);
    }

    ArrayGeometry build_planar_array(int rows, int cols, double spacing, const Vec3 &center, const Vec3 &normal)
    {
        if (rows < 1 || cols < 1)
            throw std::invalid_argument("build_planar_array: rows and cols must be >= 1");
        if (!(spacing > 0.0))
            throw std::invalid_argument("build_planar_array: spacing must be positive");
        if (!(normal.norm() > 0.0))
            throw std::invalid_argument("build_planar_array: normal must be non-zero");

        ArrayGeometry g;
        g.center = center;
        g.normal = normal.normalized();
        lattice_axes(g.normal, g.axis_u, g.axis_v);
        g.spacing = spacing;
        g.rows = rows;
        g.cols = cols;
        g.element_positions.reserve(static_cast<std::size_t>(rows) * cols);
        for (int r = 0; r < rows; ++r)
        {
            const double ov = (r - 0.5 * (rows - 1)) * spacing;
            for (int c = 0; c < cols; ++c)
            {
                const double ou = (c - 0.5 * (cols - 1)) * spacing;
                g.element_positions.emplace_back(center + ou * g.axis_u + ov * g.axis_v);
            }
        }
        return g;
    }

    ArrayGeometry node_tx_array(const NodeSpec &node)
    {
        return build_planar_array(node.tx.rows, node.tx.cols, node.tx.spacing, node.position, node.normal);
    }

    ArrayGeometry node_rx_array(const NodeSpec &node)
    {
        return build_planar_array(node.rx.rows, node.rx.cols, node.rx.spacing, node.position, node.normal);
    }

    RetroCheck check_retro_condition(double d_rx, double d_tx, double lambda_in, double lambda_out, double tol)
    {
        RetroCheck out;
        out.ratio_spacing = d_rx / d_tx;
        out.ratio_wavelength = lambda_in / lambda_out;
        out.residual = std::abs(out.ratio_spacing - out.ratio_wavelength) / out.ratio_wavelength;
        out.pass = out.residual <= tol;
        return out;
    }

    double derive_dl_frequency(double f_ul, double d_rx, double d_tx)
    {
        // d_rx / d_tx = lambda_in / lambda_out  =>  f_out = f_in * d_rx / d_tx.
        return f_ul * d_rx / d_tx;
    }
}
