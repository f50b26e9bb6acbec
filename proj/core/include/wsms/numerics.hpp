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

#ifndef WSMS_NUMERICS_HPP
#define WSMS_NUMERICS_HPP

#include <Eigen/Core>

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace wsms
{
    struct SvdResult
    {
        Eigen::MatrixXcd u;               // rows x rows, unitary
        Eigen::VectorXd singular_values;  // min(rows, cols), non-increasing
        Eigen::MatrixXcd v;               // cols x cols, unitary
    };

    // Full SVD H = U diag(s) V^H. Throws NumericalError on non-finite input.
    SvdResult svd(const Eigen::MatrixXcd &h);

    // Singular values only, non-increasing.
    Eigen::VectorXd singular_values(const Eigen::MatrixXcd &h);

    struct WaterFillResult
    {
        std::vector<double> allocations; // same order as the input singular values
        double water_level = 0.0;
        int active_count = 0;
    };

    // rho_i = (level - noise / r_i^2)^+ with sum rho_i = total_power, solved exactly
    // over the sorted active set.
    WaterFillResult water_fill(std::span<const double> singular_values, double total_power, double noise_power);

    // Water-filled capacity in bits/s/Hz over the given singular values,
    // restricted to the stream_cap largest when supplied.
    double capacity_from_singular_values(std::span<const double> singular_values, double total_power,
                                         double noise_power, std::optional<int> stream_cap = std::nullopt);

    double capacity(const Eigen::MatrixXcd &h, double total_power, double noise_power,
                    std::optional<int> stream_cap = std::nullopt);

    constexpr double default_rank_gap = 1e3;

    // Largest r with s_r / s_{r+1} >= gap_threshold and s_r > 1e-12 s_1;
    // full length when no such gap exists.
    int numerical_rank(std::span<const double> singular_values, double gap_threshold = default_rank_gap);
    int numerical_rank(const Eigen::MatrixXcd &h, double gap_threshold = default_rank_gap);

    inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
    inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts / 1e-3); }
}

#endif
