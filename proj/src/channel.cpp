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

#include "resbeam/channel.hpp"

#include "resbeam/errors.hpp"
#include "resbeam/kernels.hpp"

#include <json.hpp>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace resbeam
{
    std::string to_string(LinkDirection direction)
    {
        return direction == LinkDirection::downlink ? "downlink" : "uplink";
    }

    double element_gain(const GainPattern &pattern, double angle_from_normal)
    {
        if (angle_from_normal >= kPi / 2.0 || angle_from_normal <= -kPi / 2.0)
            return 0.0;
        return pattern.from_cosine(std::cos(angle_from_normal));
    }

    cd channel_entry(const Vec3 &tx_pos, const Vec3 &tx_normal, const Vec3 &rx_pos, const Vec3 &rx_normal,
                     double wavelength, double beta, const GainPattern &pattern)
    {
        if ((rx_pos - tx_pos).squaredNorm() == 0.0)
            throw std::invalid_argument("channel_entry: coincident element positions");
        return kernels::pair_coefficient(tx_pos, tx_normal.normalized(), rx_pos, rx_normal.normalized(),
                                         {wavelength, beta, pattern});
    }

    ChannelMatrix build_channel(const ArrayGeometry &src, const ArrayGeometry &dst, double frequency, double beta,
                                const GainPattern &pattern, double c, LinkDirection direction, int link_id,
                                Backend backend)
    {
        if (!(frequency > 0.0))
            throw std::invalid_argument("build_channel: frequency must be positive");
        ChannelMatrix out;
        out.frequency = frequency;
        out.wavelength = c / frequency;
        out.direction = direction;
        out.link_id = link_id;
        kernels::fill_channel(backend, src.element_positions, src.normal, dst.element_positions, dst.normal,
                              {out.wavelength, beta, pattern}, out.entries);
        return out;
    }

    namespace
    {
        static_assert(std::endian::native == std::endian::little, "channel dumps assume a little-endian host");

        std::filesystem::path sidecar(const std::filesystem::path &bin_path)
        {
            return std::filesystem::path(bin_path.string() + ".json");
        }
    }

    void write_channel_dump(const ChannelMatrix &channel, const std::filesystem::path &bin_path)
    {
        std::ofstream bin(bin_path, std::ios::binary);
        if (!bin)
            throw Error("cannot write " + bin_path.string());
        // CMatrix is row-major and std::complex<double> is two contiguous doubles.
        bin.write(reinterpret_cast<const char *>(channel.entries.data()),
                  static_cast<std::streamsize>(channel.entries.size() * sizeof(cd)));

        nlohmann::ordered_json meta{{"rows", channel.entries.rows()},
                                    {"cols", channel.entries.cols()},
                                    {"frequency", channel.frequency},
                                    {"wavelength", channel.wavelength},
                                    {"direction", to_string(channel.direction)},
                                    {"link_id", channel.link_id},
                                    {"layout", "row-major interleaved re/im float64 little-endian"}};
        std::ofstream js(sidecar(bin_path));
        js << meta.dump(2) << '\n';
        if (!bin || !js)
            throw Error("failed writing channel dump " + bin_path.string());
    }

    ChannelMatrix read_channel_dump(const std::filesystem::path &bin_path)
    {
        std::ifstream js(sidecar(bin_path));
        if (!js)
            throw Error("missing sidecar for " + bin_path.string());
        const auto meta = nlohmann::json::parse(js);
        ChannelMatrix out;
        out.frequency = meta.at("frequency").get<double>();
        out.wavelength = meta.at("wavelength").get<double>();
        out.direction =
            meta.at("direction").get<std::string>() == "uplink" ? LinkDirection::uplink : LinkDirection::downlink;
        out.link_id = meta.at("link_id").get<int>();
        out.entries.resize(meta.at("rows").get<Eigen::Index>(), meta.at("cols").get<Eigen::Index>());

        std::ifstream bin(bin_path, std::ios::binary);
        const auto bytes = static_cast<std::streamsize>(out.entries.size() * sizeof(cd));
        bin.read(reinterpret_cast<char *>(out.entries.data()), bytes);
        if (bin.gcount() != bytes)
            throw Error("truncated channel dump " + bin_path.string());
        return out;
    }
}
