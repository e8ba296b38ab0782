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

// Serial reference kernels against their OpenMP counterparts.

#include "resbeam/fieldmap.hpp"
#include "resbeam/geometry.hpp"
#include "resbeam/kernels.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace resbeam;

namespace
{
    constexpr double kLambda = 299792458.0 / 29e9;

    ArrayGeometry bs(int side) { return build_planar_array(side, side, kLambda / 2, Vec3::Zero(), Vec3::UnitZ()); }

    ArrayGeometry ue(int side)
    {
        return build_planar_array(side, side, kLambda / 2, Vec3(1, 0, 2), Vec3(-1, 0, -2).normalized());
    }

    Backend backend_of(const benchmark::State &state) { return state.range(1) ? Backend::parallel : Backend::serial; }

    void BM_FillChannel(benchmark::State &state)
    {
        const int side = static_cast<int>(state.range(0));
        const auto a = bs(side), b = ue(side);
        const kernels::Propagation prop{kLambda, 2.0, GainPattern{}};
        CMatrix h;
        for (auto _ : state)
        {
            kernels::fill_channel(backend_of(state), a.element_positions, a.normal, b.element_positions, b.normal,
                                  prop, h);
            benchmark::DoNotOptimize(h.data());
        }
        state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(a.size() * b.size()));
    }

    void BM_Propagate(benchmark::State &state)
    {
        const int side = static_cast<int>(state.range(0));
        const auto a = bs(side), b = ue(side);
        CMatrix h;
        kernels::fill_channel(Backend::serial, a.element_positions, a.normal, b.element_positions, b.normal,
                              {kLambda, 2.0, GainPattern{}}, h);
        const CVector x = CVector::Constant(static_cast<Eigen::Index>(a.size()), cd(0.1, 0.0));
        CVector y;
        for (auto _ : state)
        {
            kernels::propagate(backend_of(state), h, x, y);
            benchmark::DoNotOptimize(y.data());
        }
        state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(a.size() * b.size()));
    }

    void BM_SampleDensity(benchmark::State &state)
    {
        const auto a = bs(16);
        const auto sources = array_sources(a, CVector::Constant(static_cast<Eigen::Index>(a.size()), cd(0.1, 0.0)));
        PlaneGrid g;
        g.origin = Vec3(0, 0, 2);
        g.extent_u = g.extent_v = 2.0;
        g.n_u = g.n_v = static_cast<int>(state.range(0));
        const auto points = g.points();
        std::vector<double> out(points.size());
        const kernels::Propagation prop{kLambda, 2.0, GainPattern{}};
        for (auto _ : state)
        {
            kernels::sample_density(backend_of(state), sources, prop, points, out);
            benchmark::DoNotOptimize(out.data());
        }
        state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(points.size() * sources.size()));
    }
}

BENCHMARK(BM_FillChannel)->ArgNames({"side", "parallel"})->ArgsProduct({{8, 16, 30}, {0, 1}});
BENCHMARK(BM_Propagate)->ArgNames({"side", "parallel"})->ArgsProduct({{8, 16, 30}, {0, 1}});
BENCHMARK(BM_SampleDensity)->ArgNames({"grid", "parallel"})->ArgsProduct({{64, 201}, {0, 1}});

BENCHMARK_MAIN();
