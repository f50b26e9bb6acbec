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

#include "wsms/power.hpp"

#include "wsms/errors.hpp"

namespace wsms
{
    std::string to_string(Architecture arch)
    {
        switch (arch)
        {
        case Architecture::wsms:
            return "wsms";
        case Architecture::fully_connected:
            return "fully-connected";
        case Architecture::array_of_subarrays:
            return "aosa";
        case Architecture::fully_digital:
            return "fully-digital";
        }
        return "unknown";
    }

    DeviceCounts device_counts(Architecture arch, int n, int l, int k)
    {
        if (n < 1 || l < 1 || k < 1)
            throw DomainError("power: N, L and k must be positive");
        DeviceCounts c;
        c.pa = n;
        c.pc = n;
        c.rf = l;
        c.dac = l;
        c.bb = 1;
        switch (arch)
        {
        case Architecture::wsms:
            if (n % k != 0)
                throw DomainError("power: k must divide N");
            c.ps = static_cast<long>(n) * l / k;
            break;
        case Architecture::fully_connected:
            c.ps = static_cast<long>(n) * l;
            break;
        case Architecture::array_of_subarrays:
            c.ps = n;
            c.pc = 0;
            break;
        case Architecture::fully_digital:
            c.ps = 0;
            c.pc = 0;
            c.rf = n;
            c.dac = n;
            break;
        }
        return c;
    }

    double power_consumption(Architecture arch, int n, int l, int k, const PowerModel &m)
    {
        if (!(m.pa > 0 && m.pc > 0 && m.ps > 0 && m.rf > 0 && m.dac > 0 && m.bb > 0))
            throw DomainError("power: device powers must be positive");
        const DeviceCounts c = device_counts(arch, n, l, k);
        const double mw = m.pa * c.pa + m.pc * c.pc + m.ps * c.ps + m.rf * c.rf + m.dac * c.dac + m.bb * c.bb;
        return mw * 1e-3;
    }

    double total_link_power(double tx_watts, double rx_watts, double transmit_power_watts)
    {
        return tx_watts + rx_watts + transmit_power_watts;
    }

    double energy_efficiency(double se, double bandwidth, double total_power)
    {
        if (!(total_power > 0.0))
            throw DomainError("energy_efficiency: total power must be positive");
        return se * bandwidth / total_power;
    }
}
