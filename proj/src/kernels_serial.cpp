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

#include "resbeam/kernels.hpp"

#include <limits>

namespace resbeam::kernels
{
    namespace serial
    {
        void fill_channel(std::span<const Vec3> src, const Vec3 &src_normal, std::span<const Vec3> dst,
                          const Vec3 &dst_normal, const Propagation &prop, CMatrix &out)
        {
            const auto rows = static_cast<Eigen::Index>(src.size());
            const auto cols = static_cast<Eigen::Index>(dst.size());
            out.resize(rows, cols);
            for (Eigen::Index m = 0; m < rows; ++m)
                for (Eigen::Index n = 0; n < cols; ++n)
                    out(m, n) = pair_coefficient(src[m], src_normal, dst[n], dst_normal, prop);
        }

        void propagate(const CMatrix &h, const CVector &x, CVector &y)
        {
            y.setZero(h.cols());
            for (Eigen::Index n = 0; n < h.cols(); ++n)
            {
                cd acc = 0.0;
                for (Eigen::Index m = 0; m < h.rows(); ++m)
                    acc += h(m, n) * x[m];
                y[n] = acc;
            }
        }

        void sample_density(std::span<const FieldSource> sources, const Propagation &prop,
                            std::span<const Vec3> points, std::span<double> out)
        {
            for (std::size_t p = 0; p < points.size(); ++p)
            {
                cd acc = 0.0;
                bool coincident = false;
                for (const auto &s : sources)
                {
                    if ((points[p] - s.position).squaredNorm() == 0.0)
                    {
                        coincident = true;
                        break;
                    }
                    acc += s.amplitude * field_coefficient(s.position, s.normal, points[p], prop);
                }
                out[p] = coincident ? std::numeric_limits<double>::quiet_NaN() : std::norm(acc);
            }
        }
    }

    void fill_channel(Backend backend, std::span<const Vec3> src, const Vec3 &src_normal, std::span<const Vec3> dst,
                      const Vec3 &dst_normal, const Propagation &prop, CMatrix &out)
    {
        if (backend == Backend::serial)
            serial::fill_channel(src, src_normal, dst, dst_normal, prop, out);
        else
            parallel::fill_channel(src, src_normal, dst, dst_normal, prop, out);
    }

    void propagate(Backend backend, const CMatrix &h, const CVector &x, CVector &y)
    {
        if (backend == Backend::serial)
            serial::propagate(h, x, y);
        else
            parallel::propagate(h, x, y);
    }

    void sample_density(Backend backend, std::span<const FieldSource> sources, const Propagation &prop,
                        std::span<const Vec3> points, std::span<double> out)
    {
        if (backend == Backend::serial)
            serial::sample_density(sources, prop, points, out);
        else
            parallel::sample_density(sources, prop, points, out);
    }
}
