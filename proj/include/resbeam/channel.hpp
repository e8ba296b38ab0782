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

#ifndef RESBEAM_CHANNEL_HPP
#define RESBEAM_CHANNEL_HPP

#include "resbeam/gain_pattern.hpp"
#include "resbeam/geometry.hpp"
#include "resbeam/types.hpp"

#include <filesystem>
#include <string>

namespace resbeam
{
    enum class LinkDirection
    {
        downlink,
        uplink
    };

    std::string to_string(LinkDirection direction);

    // Near-field MIMO channel for one link direction on one sub-band.
    // Rows index transmit elements, columns index receive elements.
    struct ChannelMatrix
    {
        CMatrix entries;
        double wavelength = 0.0; // [m]
        double frequency = 0.0;  // [Hz]
        LinkDirection direction = LinkDirection::downlink;
        int link_id = 0;

        Eigen::Index tx_count() const { return entries.rows(); }
        Eigen::Index rx_count() const { return entries.cols(); }
    };

    /// g_max cos^q(angle) in front of the element, 0 from pi/2 on.
    double element_gain(const GainPattern &pattern, double angle_from_normal);

    /// Single element pair: magnitude (lambda/4pi) sqrt(G_tx G_rx r^-beta), phase -2 pi r / lambda.
    /// Throws std::invalid_argument for coincident positions.
    cd channel_entry(const Vec3 &tx_pos, const Vec3 &tx_normal, const Vec3 &rx_pos, const Vec3 &rx_normal,
                     double wavelength, double beta, const GainPattern &pattern);

    /// Full matrix between two lattices at `frequency`; wavelength = c / frequency.
    ChannelMatrix build_channel(const ArrayGeometry &src, const ArrayGeometry &dst, double frequency, double beta,
                                const GainPattern &pattern, double c, LinkDirection direction = LinkDirection::downlink,
                                int link_id = 0, Backend backend = Backend::parallel);

    // Flat little-endian float64 dump, interleaved re/im, row-major, plus
    // a JSON sidecar `<path>.json` with {rows, cols, frequency, direction, link_id}.
    void write_channel_dump(const ChannelMatrix &channel, const std::filesystem::path &bin_path);
    ChannelMatrix read_channel_dump(const std::filesystem::path &bin_path);
}

#endif
