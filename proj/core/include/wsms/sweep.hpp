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

#ifndef WSMS_SWEEP_HPP
#define WSMS_SWEEP_HPP

#include "wsms/scenario.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace wsms
{
    enum class AxisName
    {
        transmit_power, // rho [dBm]
        subarrays,      // k
        spacing,        // d_s [m]
        antennas,       // N_t = N_r
        distance        // D [m]
    };

    struct AxisSpec
    {
        AxisName name = AxisName::transmit_power;
        double start = 0.0;
        double stop = 0.0;
        double step = 1.0;

        // start, start + step, ... up to stop (inclusive within half a step).
        std::vector<double> values() const;
    };

    // NAME=START:STOP:STEP with NAME one of rho, k, ds (d_s), N, D. Throws UsageError.
    AxisSpec parse_axis(std::string_view text);

    enum class SweepArchitecture
    {
        wsms,            // DLR configuration + closed-form hybrid beamforming
        planar_baseline, // contiguous array, plane-wave channel, N_p streams, FC power
        aosa,            // contiguous array-of-subarrays (d_s at its minimum), AoSA power
        los_mimo         // fully digital LoS-MIMO at the WSMS aperture, digital power
    };

    std::string to_string(SweepArchitecture arch);

    // Comma-separated list, e.g. "wsms,planar-baseline,los-mimo". Throws UsageError.
    std::vector<SweepArchitecture> parse_architectures(std::string_view text);

    struct SweepRow
    {
        int scenario_id = 0;
        SweepArchitecture architecture = SweepArchitecture::wsms;
        int n_tx = 0;
        int n_rx = 0;
        int k = 0;
        double spacing = 0.0;
        double rho_dbm = 0.0;
        double distance = 0.0;
        double se = 0.0;
        double capacity = 0.0;
        double power_w = 0.0;
        double ee = 0.0;
        double wall_ms = 0.0;
        std::string status = "ok";
    };

    struct SweepOptions
    {
        std::vector<AxisSpec> axes;
        std::vector<SweepArchitecture> architectures{SweepArchitecture::wsms, SweepArchitecture::planar_baseline,
                                                     SweepArchitecture::los_mimo};
        int workers = 1;
        bool timing = false; // wall_ms stays 0 otherwise, keeping output reproducible
    };

    struct SweepResult
    {
        std::vector<SweepRow> rows;
        int points = 0;
        int failed = 0;
    };

    // Cartesian product of the axes; rho falls back to the config list, D to the
    // config's nominal distance. Rows are ordered by point index, then architecture.
    SweepResult run_sweep(const ScenarioConfig &config, const SweepOptions &options);

    extern const char *const sweep_csv_header;
    void write_csv(std::ostream &out, const SweepResult &result);
    std::string format_number(double value);
}

#endif
