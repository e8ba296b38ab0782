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

#include "resbeam/fieldmap.hpp"

#include "resbeam/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace resbeam
{
    void PlaneGrid::validate() const
    {
        if (n_u < 2 || n_v < 2)
            throw std::invalid_argument("plane grid needs at least 2 samples per axis");
        if (!(extent_u > 0.0) || !(extent_v > 0.0))
            throw std::invalid_argument("plane grid extents must be positive");
        if (std::abs(axis_u.norm() - 1.0) > 1e-12 || std::abs(axis_v.norm() - 1.0) > 1e-12 ||
            std::abs(axis_u.dot(axis_v)) > 1e-12)
            throw std::invalid_argument("plane grid axes must be orthonormal");
    }

    Vec3 PlaneGrid::point(int iu, int iv) const
    {
        return origin + (-0.5 * extent_u + iu * cell_u()) * axis_u + (-0.5 * extent_v + iv * cell_v()) * axis_v;
    }

    std::vector<Vec3> PlaneGrid::points() const
    {
        std::vector<Vec3> out;
        out.reserve(static_cast<std::size_t>(n_u) * n_v);
        for (int iv = 0; iv < n_v; ++iv)
            for (int iu = 0; iu < n_u; ++iu)
                out.push_back(point(iu, iv));
        return out;
    }

    std::pair<double, double> PlaneGrid::project(const Vec3 &p) const
    {
        const Vec3 d = p - origin;
        return {d.dot(axis_u), d.dot(axis_v)};
    }

    double FieldMap::max() const
    {
        double m = 0.0;
        for (double v : values)
            if (v > m)
                m = v;
        return m;
    }

    double FieldMap::mean() const
    {
        if (values.empty())
            return 0.0;
        return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    }

    double FieldMap::peak_to_mean() const
    {
        const double m = mean();
        return m > 0.0 ? max() / m : 0.0;
    }

    std::pair<int, int> FieldMap::argmax() const
    {
        std::size_t best = 0;
        for (std::size_t i = 1; i < values.size(); ++i)
            if (values[i] > values[best])
                best = i;
        return {static_cast<int>(best % grid.n_u), static_cast<int>(best / grid.n_u)};
    }

    FieldMap sample_field(std::span<const FieldSource> sources, double wavelength, double beta,
                          const GainPattern &pattern, const PlaneGrid &grid, const SampleOptions &options)
    {
        if (sources.empty())
            throw std::invalid_argument("sample_field: empty source list");
        grid.validate();

        FieldMap map;
        map.grid = grid;
        map.wavelength = wavelength;
        const std::vector<Vec3> pts = grid.points();
        map.values.assign(pts.size(), 0.0);
        kernels::sample_density(options.backend, sources, {wavelength, beta, pattern}, pts, map.values);

        for (std::size_t i = 0; i < map.values.size(); ++i)
            if (std::isnan(map.values[i]))
                map.coincident.push_back(i);
        // Patch samples that sit on a source with their largest finite neighbor.
        for (std::size_t i : map.coincident)
        {
            const int iu = static_cast<int>(i % grid.n_u);
            const int iv = static_cast<int>(i / grid.n_u);
            double best = 0.0;
            for (int dv = -1; dv <= 1; ++dv)
                for (int du = -1; du <= 1; ++du)
                {
                    const int u = iu + du, v = iv + dv;
                    if (u < 0 || v < 0 || u >= grid.n_u || v >= grid.n_v)
                        continue;
                    const double x = map.values[static_cast<std::size_t>(v) * grid.n_u + u];
                    if (!std::isnan(x))
                        best = std::max(best, x);
                }
            map.values[i] = best;
        }

        if (options.reactive_radius > 0.0)
        {
            const double r2 = options.reactive_radius * options.reactive_radius;
            for (std::size_t i = 0; i < pts.size(); ++i)
                for (const auto &s : sources)
                    if ((pts[i] - s.position).squaredNorm() < r2)
                    {
                        map.reactive.push_back(i);
                        break;
                    }
        }
        return map;
    }

    FieldMap normalize_map(FieldMap map)
    {
        const double peak = map.max();
        if (!(peak > 0.0))
        {
            map.all_zero = true;
            return map;
        }
        for (double &v : map.values)
            v /= peak;
        map.normalized = true;
        return map;
    }

    void normalize_maps_global(std::span<FieldMap> maps)
    {
        double peak = 0.0;
        for (const auto &m : maps)
            peak = std::max(peak, m.max());
        for (auto &m : maps)
        {
            if (!(peak > 0.0))
            {
                m.all_zero = true;
                continue;
            }
            for (double &v : m.values)
                v /= peak;
            m.normalized = true;
        }
    }

    FieldMap combine_incoherent(std::span<const FieldMap> maps)
    {
        if (maps.empty())
            throw std::invalid_argument("combine_incoherent: no maps");
        FieldMap out = maps.front();
        for (std::size_t k = 1; k < maps.size(); ++k)
        {
            if (maps[k].values.size() != out.values.size())
                throw std::invalid_argument("combine_incoherent: grid mismatch");
            for (std::size_t i = 0; i < out.values.size(); ++i)
                out.values[i] += maps[k].values[i];
            out.coincident.insert(out.coincident.end(), maps[k].coincident.begin(), maps[k].coincident.end());
            out.reactive.insert(out.reactive.end(), maps[k].reactive.begin(), maps[k].reactive.end());
        }
        if (maps.size() > 1)
            out.wavelength = 0.0; // Several carriers
        out.normalized = false;
        return out;
    }

    std::vector<FieldSource> array_sources(const ArrayGeometry &array, const CVector &amplitudes)
    {
        if (static_cast<std::size_t>(amplitudes.size()) != array.size())
            throw std::invalid_argument("array_sources: amplitude count does not match the lattice");
        std::vector<FieldSource> out(array.size());
        for (std::size_t m = 0; m < array.size(); ++m)
            out[m] = {array.element_positions[m], array.normal, amplitudes[static_cast<Eigen::Index>(m)]};
        return out;
    }

    std::optional<PlanePreset> parse_plane_preset(const std::string &name)
    {
        if (name == "xoz")
            return PlanePreset::xoz;
        if (name == "xoy-ue" || name == "xoy_ue")
            return PlanePreset::xoy_ue;
        if (name == "xoy-bs" || name == "xoy_bs")
            return PlanePreset::xoy_bs;
        return std::nullopt;
    }

    namespace
    {
        struct Coverage
        {
            Vec3 origin;
            Vec3 axis_u, axis_v;
            double extent_u, extent_v;
        };

        Coverage coverage(const Scenario &s, PlanePreset preset)
        {
            Vec3 lo = s.bs.position, hi = s.bs.position;
            double z_mean = 0.0;
            for (const auto &ue : s.ues)
            {
                lo = lo.cwiseMin(ue.position);
                hi = hi.cwiseMax(ue.position);
                z_mean += ue.position.z();
            }
            z_mean /= static_cast<double>(s.ues.size());
            const Vec3 mid = 0.5 * (lo + hi);
            const double margin = 1.0;

            Coverage c;
            c.axis_u = Vec3::UnitX();
            if (preset == PlanePreset::xoz)
            {
                c.axis_v = Vec3::UnitZ();
                c.origin = Vec3(mid.x(), s.bs.position.y(), mid.z());
                c.extent_u = hi.x() - lo.x() + 2.0 * margin;
                c.extent_v = hi.z() - lo.z() + 2.0 * 0.5;
                return c;
            }
            c.axis_v = Vec3::UnitY();
            const double z = preset == PlanePreset::xoy_ue ? z_mean : s.bs.position.z();
            c.origin = Vec3(mid.x(), mid.y(), z);
            c.extent_u = hi.x() - lo.x() + 2.0 * margin;
            c.extent_v = hi.y() - lo.y() + 2.0 * margin;
            return c;
        }

        std::string fmt17(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }
    }

    PlaneGrid plane_preset(const Scenario &scenario, PlanePreset preset, int n_u, int n_v)
    {
        const Coverage c = coverage(scenario, preset);
        PlaneGrid g{c.origin, c.axis_u, c.axis_v, c.extent_u, c.extent_v, n_u, n_v};
        g.validate();
        return g;
    }

    PlaneGrid plane_preset_resolution(const Scenario &scenario, PlanePreset preset, double resolution)
    {
        if (!(resolution > 0.0))
            throw std::invalid_argument("plane_preset_resolution: resolution must be positive");
        const Coverage c = coverage(scenario, preset);
        const int n_u = static_cast<int>(std::ceil(c.extent_u / resolution - 1e-9)) + 1;
        const int n_v = static_cast<int>(std::ceil(c.extent_v / resolution - 1e-9)) + 1;
        return plane_preset(scenario, preset, n_u, n_v);
    }

    void write_field_map(const FieldMap &map, const std::filesystem::path &csv_path, bool binary)
    {
        const auto &g = map.grid;
        std::ofstream csv(csv_path);
        if (!csv)
            throw Error("cannot write " + csv_path.string());
        for (int iv = 0; iv < g.n_v; ++iv)
        {
            for (int iu = 0; iu < g.n_u; ++iu)
            {
                if (iu)
                    csv << ',';
                csv << fmt17(map.at(iu, iv));
            }
            csv << '\n';
        }

        auto vec = [](const Vec3 &v) { return nlohmann::ordered_json::array({v.x(), v.y(), v.z()}); };
        nlohmann::ordered_json meta{{"origin", vec(g.origin)},
                                    {"axis_u", vec(g.axis_u)},
                                    {"axis_v", vec(g.axis_v)},
                                    {"extent_u", g.extent_u},
                                    {"extent_v", g.extent_v},
                                    {"n_u", g.n_u},
                                    {"n_v", g.n_v},
                                    {"wavelength", map.wavelength},
                                    {"normalized", map.normalized},
                                    {"all_zero", map.all_zero},
                                    {"coincident_samples", map.coincident.size()},
                                    {"reactive_samples", map.reactive.size()},
                                    {"layout", "n_v rows x n_u columns, row iv holds samples along axis_u"}};
        if (binary)
        {
            auto bin_path = csv_path;
            bin_path.replace_extension(".bin");
            std::ofstream bin(bin_path, std::ios::binary);
            bin.write(reinterpret_cast<const char *>(map.values.data()),
                      static_cast<std::streamsize>(map.values.size() * sizeof(double)));
            meta["binary"] = bin_path.filename().string();
        }
        std::ofstream js(csv_path.string() + ".json");
        js << meta.dump(2) << '\n';
        if (!csv || !js)
            throw Error("failed writing field map " + csv_path.string());
    }
}
