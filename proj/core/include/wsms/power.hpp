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

#ifndef WSMS_POWER_HPP
#define WSMS_POWER_HPP

#include <string>

namespace wsms
{
    enum class Architecture
    {
        wsms,
        fully_connected,
        array_of_subarrays,
        fully_digital
    };

    std::string to_string(Architecture arch);

    // Device powers in mW.
    struct PowerModel
    {
        double pa = 40.0;
        double pc = 6.6;
        double ps = 42.0;
        double rf = 26.0;
        double dac = 110.0;
        double bb = 200.0;

        bool operator==(const PowerModel &) const = default;
    };

    struct DeviceCounts
    {
        long pa = 0;
        long pc = 0;
        long ps = 0;
        long rf = 0;
        long dac = 0;
        long bb = 0;
    };

    // Counts for one terminal with N antennas, L RF chains and k subarrays.
    DeviceCounts device_counts(Architecture arch, int n, int l, int k);

    // One terminal, in watts.
    double power_consumption(Architecture arch, int n, int l, int k, const PowerModel &model = {});

    // P_tx + P_rx + rho, all in watts.
    double total_link_power(double tx_watts, double rx_watts, double transmit_power_watts);

    // Bits per joule.
    double energy_efficiency(double se, double bandwidth, double total_power);
}

#endif
