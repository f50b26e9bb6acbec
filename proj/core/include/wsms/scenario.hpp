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

#ifndef WSMS_SCENARIO_HPP
#define WSMS_SCENARIO_HPP

#include "wsms/arrayconfig.hpp"
#include "wsms/power.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wsms
{
    // Walls placed at offsets drawn uniformly from [min_offset, max_offset] with the
    // scenario seed, in addition to the explicit wall_offsets.
    struct RandomWalls
    {
        int count = 0;
        double min_offset = 5.0;  // [m]
        double max_offset = 20.0; // [m]

        bool operator==(const RandomWalls &) const = default;
    };

    // File-level scenario as written by the user. Powers stay in dBm here;
    // to_link_scenario() is the only place they become watts.
    struct ScenarioConfig
    {
        double carrier_frequency = 3e11; // [Hz]
        double bandwidth = 5e9;          // [Hz]
        double noise_power_dbm = -76.2;
        std::vector<double> transmit_power_dbm{10.0};
        std::vector<DistancePoint> distances{{60.0, 1.0}};
        double tx_height = 30.0;
        double rx_height = 30.0;
        int n_tx = 64;
        int n_rx = 64;
        double reflection_loss_db = 10.0;
        double absorption = 0.0; // [1/m]
        bool ground_reflection = true;
        std::vector<double> wall_offsets;
        RandomWalls random_walls;
        std::optional<double> min_spacing;
        std::optional<double> max_spacing;
        double max_aperture = 1.0;
        std::optional<int> k;
        bool include_oversized_k = false;
        PowerModel tx_power_model;
        PowerModel rx_power_model;
        std::uint64_t seed = 1;
        int workers = 1;

        bool operator==(const ScenarioConfig &) const = default;
    };

    // Link at the first transmit power of the list.
    LinkScenario to_link_scenario(const ScenarioConfig &config);
    LinkScenario to_link_scenario(const ScenarioConfig &config, double transmit_power_dbm);

    // Throws ConfigError carrying the 1-based line of the offending node.
    ScenarioConfig parse_scenario(std::string_view text);
    ScenarioConfig load_scenario(const std::string &path);

    std::string serialize(const ScenarioConfig &config);
}

#endif
