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

#ifndef RESBEAM_FIELDMAP_HPP
#define RESBEAM_FIELDMAP_HPP

#include "resbeam/gain_pattern.hpp"
#include "resbeam/geometry.hpp"
#include "resbeam/kernels.hpp"
#include "resbeam/scenario.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace resbeam
{
    using kernels::FieldSource;

    // Rectangular patch of a plane centered on `origin`. Sample (iu, iv) lies at
    // origin + (-extent_u/2 + iu * cell_u) axis_u + (-extent_v/2 + iv * cell_v) axis_v.
    struct PlaneGrid
    {
        Vec3 origin = Vec3::Zero();
        Vec3 axis_u = Vec3::UnitX();
        Vec3 axis_v = Vec3::UnitY();
        double extent_u = 1.0;
        double extent_v = 1.0;
        int n_u = 2;
        int n_v = 2;

        void validate() const;
        double cell_u() const { return extent_u / (n_u - 1); }
        double cell_v() const { return extent_v / (n_v - 1); }
        Vec3 point(int iu, int iv) const;
        std::vector<Vec3> points() const; // row-major in v, i.e. index iv * n_u + iu
        // In-plane coordinates (u, v) of a point relative to `origin`.
        std::pair<double, double> project(const Vec3 &p) const;
    };

    struct FieldMap
    {
        PlaneGrid grid;
        std::vector<double> values; // n_v rows x n_u columns
        double wavelength = 0.0;
        bool normalized = false;
        bool all_zero = false;                  // Set by normalize_map on an empty map
        std::vector<std::size_t> coincident;    // Samples on top of a source, patched from neighbors
        std::vector<std::size_t> reactive;      // Samples inside the reactive zone, kept as computed

        double at(int iu, int iv) const { return values.at(static_cast<std::size_t>(iv) * grid.n_u + iu); }
        double max() const;
        double mean() const;
        double peak_to_mean() const;
        std::pair<int, int> argmax() const; // (iu, iv)
    };

    struct SampleOptions
    {
        double reactive_radius = 0.0; // Flag samples closer than this to any source
        Backend backend = Backend::parallel;
    };

    /// Coherent power density S(p) = |sum_m a_m sqrt(G(psi_m)/4pi) r_m^(-beta/2) exp(-j 2 pi r_m / lambda)|^2.
    /// Throws std::invalid_argument for an empty source list.
    FieldMap sample_field(std::span<const FieldSource> sources, double wavelength, double beta,
                          const GainPattern &pattern, const PlaneGrid &grid, const SampleOptions &options = {});

    /// Divides by the maximum; an all-zero map is returned unchanged with `all_zero` set.
    FieldMap normalize_map(FieldMap map);

    // Normalizes a sequence of maps by their common maximum.
    void normalize_maps_global(std::span<FieldMap> maps);

    // Incoherent sum of maps over the same grid (different sub-bands do not interfere).
    FieldMap combine_incoherent(std::span<const FieldMap> maps);

    std::vector<FieldSource> array_sources(const ArrayGeometry &array, const CVector &amplitudes);

    enum class PlanePreset
    {
        xoz,    // Vertical plane through the BS containing x and the boresight
        xoy_ue, // Horizontal plane at the mean UE height
        xoy_bs  // Horizontal plane through the BS
    };

    std::optional<PlanePreset> parse_plane_preset(const std::string &name);

    // Grid covering every node with a 1 m margin (0.5 m along z for xoz).
    PlaneGrid plane_preset(const Scenario &scenario, PlanePreset preset, int n_u, int n_v);
    // Same coverage, sample count chosen so that cells are at most `resolution` wide.
    PlaneGrid plane_preset_resolution(const Scenario &scenario, PlanePreset preset, double resolution);

    /// CSV (n_v rows x n_u columns), JSON sidecar `<csv>.json`, optional `<csv stem>.bin`
    /// with row-major float64 values.
    void write_field_map(const FieldMap &map, const std::filesystem::path &csv_path, bool binary = false);
}

#endif
