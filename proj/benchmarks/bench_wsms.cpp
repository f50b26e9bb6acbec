// SPDX-License-Identifier: Apache-2.0
//
// wsms - terahertz widely-spaced multi-subarray link simulation
// Copyright (C) 2026 The wsms authors
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

#include "wsms/arrayconfig.hpp"
#include "wsms/beamforming.hpp"
#include "wsms/channel.hpp"
#include "wsms/numerics.hpp"

#include <benchmark/benchmark.h>

using namespace wsms;

namespace
{
    struct Link
    {
        LinkScenario scenario;
        ArrayLayout tx;
        ArrayLayout rx;
        PathSet paths;
        LinkGeometry geometry;
    };

    Link make_link(int n, int k)
    {
        Link l;
        l.scenario.n_tx = l.scenario.n_rx = n;
        const double d = l.scenario.nominal_distance();
        const SpacingBounds b = spacing_bounds(l.scenario, k);
        const double spacing = 0.5 * (b.min + b.max);
        l.tx = build_layout(n, k, spacing, l.scenario.wavelength, 0.0);
        l.rx = build_layout(n, k, spacing, l.scenario.wavelength, d);
        l.paths = path_gains_backhaul(l.scenario.budget_at(d));
        l.geometry = l.scenario.geometry_at(d);
        return l;
    }

    // fixed k = 4 and two paths, so N_s = 8 while N grows
    void BM_ClosedFormWsms(benchmark::State &state)
    {
        const Link l = make_link(static_cast<int>(state.range(0)), 4);
        for (auto _ : state)
        {
            BeamformerSet bf = closed_form_wsms(l.paths, l.tx, l.rx, l.geometry, l.scenario.transmit_power,
                                                l.scenario.noise_power);
            benchmark::DoNotOptimize(bf);
        }
        state.SetComplexityN(state.range(0));
    }
    BENCHMARK(BM_ClosedFormWsms)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oN);

    void BM_DenseCapacity(benchmark::State &state)
    {
        const Link l = make_link(static_cast<int>(state.range(0)), 4);
        const Eigen::MatrixXcd h = assemble_wsms_channel(l.paths, l.tx, l.rx, l.geometry).entries;
        for (auto _ : state)
            benchmark::DoNotOptimize(capacity(h, l.scenario.transmit_power, l.scenario.noise_power, 8));
    }
    BENCHMARK(BM_DenseCapacity)->RangeMultiplier(2)->Range(64, 256);

    void BM_FactoredCapacity(benchmark::State &state)
    {
        const Link l = make_link(static_cast<int>(state.range(0)), 4);
        const double d = l.scenario.nominal_distance();
        for (auto _ : state)
            benchmark::DoNotOptimize(configuration_capacity(l.scenario, 4, l.tx.subarray_spacing, d));
    }
    BENCHMARK(BM_FactoredCapacity)->RangeMultiplier(2)->Range(64, 1024);

    void BM_DlrObjectiveValue(benchmark::State &state)
    {
        const int k = static_cast<int>(state.range(0));
        const Link l = make_link(1024, k);
        const DlrObjective f(l.tx.ref_indices, l.rx.ref_indices, l.scenario.wavelength, l.scenario.distances);
        double x = l.tx.subarray_spacing;
        for (auto _ : state)
        {
            benchmark::DoNotOptimize(f.value(x));
            benchmark::DoNotOptimize(f.gradient(x));
        }
    }
    BENCHMARK(BM_DlrObjectiveValue)->Arg(4)->Arg(16)->Arg(32);

    void BM_OptimizeSpacing(benchmark::State &state)
    {
        const int k = static_cast<int>(state.range(0));
        const Link l = make_link(1024, k);
        const DlrObjective f(l.tx.ref_indices, l.rx.ref_indices, l.scenario.wavelength, l.scenario.distances);
        const SpacingBounds b = spacing_bounds(l.scenario, k);
        for (auto _ : state)
            benchmark::DoNotOptimize(optimize_spacing(f, b));
    }
    BENCHMARK(BM_OptimizeSpacing)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

    void BM_DlrSelect(benchmark::State &state)
    {
        LinkScenario s;
        s.n_tx = s.n_rx = static_cast<int>(state.range(0));
        for (auto _ : state)
            benchmark::DoNotOptimize(dlr_select(s));
    }
    BENCHMARK(BM_DlrSelect)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
}

BENCHMARK_MAIN();
