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

#ifndef RESBEAM_KERNELS_HPP
#define RESBEAM_KERNELS_HPP

#include "resbeam/gain_pattern.hpp"
#include "resbeam/types.hpp"

#include <cmath>
#include <span>

// Hot loops of the simulator. Every kernel exists twice: `serial` is the
// reference implementation, `parallel` splits the outer loop with OpenMP.
// Both evaluate each output with the same arithmetic in the same order, so
// their results are bit-identical and tests compare them with ==.

namespace resbeam::kernels
{
    struct Propagation
    {
        double wavelength = 0.0;
        double beta = 2.0;
        GainPattern pattern;
    };

    // A radiating element with complex carrier amplitude (|a|^2 is its power in W).
    struct FieldSource
    {
        Vec3 position = Vec3::Zero();
        Vec3 normal = Vec3::UnitZ();
        cd amplitude = 0.0;
    };

    // Element-to-element coefficient (lambda / 4 pi) sqrt(G_tx G_rx r^-beta) exp(-j 2 pi r / lambda).
    // The expression is symmetric in (tx, rx) so swapped arguments give the same bits.
    inline cd pair_coefficient(const Vec3 &tx, const Vec3 &tx_normal, const Vec3 &rx, const Vec3 &rx_normal,
                               const Propagation &prop)
    {
        const Vec3 d = rx - tx;
        const double r = d.norm();
        const double cos_tx = tx_normal.dot(d) / r;
        const double cos_rx = -rx_normal.dot(d) / r;
        const double gains = prop.pattern.from_cosine(cos_tx) * prop.pattern.from_cosine(cos_rx);
        const double spread = prop.beta == 2.0 ? 1.0 / (r * r) : std::pow(r, -prop.beta);
        const double magnitude = prop.wavelength / (4.0 * kPi) * std::sqrt(gains * spread);
        return std::polar(magnitude, -kTwoPi * r / prop.wavelength);
    }

    // Free-space field kernel sqrt(G / 4 pi) r^(-beta/2) exp(-j 2 pi r / lambda) from one source to a point.
    inline cd field_coefficient(const Vec3 &src, const Vec3 &src_normal, const Vec3 &point, const Propagation &prop)
    {
        const Vec3 d = point - src;
        const double r = d.norm();
        const double gain = prop.pattern.from_cosine(src_normal.dot(d) / r);
        const double spread = prop.beta == 2.0 ? 1.0 / (r * r) : std::pow(r, -prop.beta);
        return std::polar(std::sqrt(gain / (4.0 * kPi) * spread), -kTwoPi * r / prop.wavelength);
    }

    namespace serial
    {
        // out(m, n) = pair_coefficient(src[m], dst[n]); `out` must be sized src x dst.
        void fill_channel(std::span<const Vec3> src, const Vec3 &src_normal, std::span<const Vec3> dst,
                          const Vec3 &dst_normal, const Propagation &prop, CMatrix &out);

        // y = H^T x, i.e. y[n] = sum_m H(m, n) x[m], summed in ascending m.
        void propagate(const CMatrix &h, const CVector &x, CVector &y);

        // out[p] = |sum_s a_s field_coefficient(s, p)|^2. Points on top of a source give NaN.
        void sample_density(std::span<const FieldSource> sources, const Propagation &prop,
                            std::span<const Vec3> points, std::span<double> out);
    }

    namespace parallel
    {
        void fill_channel(std::span<const Vec3> src, const Vec3 &src_normal, std::span<const Vec3> dst,
                          const Vec3 &dst_normal, const Propagation &prop, CMatrix &out);
        void propagate(const CMatrix &h, const CVector &x, CVector &y);
        void sample_density(std::span<const FieldSource> sources, const Propagation &prop,
                            std::span<const Vec3> points, std::span<double> out);
    }

    void fill_channel(Backend backend, std::span<const Vec3> src, const Vec3 &src_normal, std::span<const Vec3> dst,
                      const Vec3 &dst_normal, const Propagation &prop, CMatrix &out);
    void propagate(Backend backend, const CMatrix &h, const CVector &x, CVector &y);
    void sample_density(Backend backend, std::span<const FieldSource> sources, const Propagation &prop,
                        std::span<const Vec3> points, std::span<double> out);
}

#endif
