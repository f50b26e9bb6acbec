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

#include "wsms/numerics.hpp"

#include "wsms/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wsms
{
    namespace
    {
        void require_finite(const Eigen::MatrixXcd &h)
        {
            if (!h.allFinite())
                throw NumericalError("svd: matrix has non-finite entries");
        }
    }

    SvdResult svd(const Eigen::MatrixXcd &h)
    {
        require_finite(h);
        Eigen::BDCSVD<Eigen::MatrixXcd> dec(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
        return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
    }

    Eigen::VectorXd singular_values(const Eigen::MatrixXcd &h)
    {
        require_finite(h);
        Eigen::BDCSVD<Eigen::MatrixXcd> dec(h);
        return dec.singularValues();
    }

    WaterFillResult water_fill(std::span<const double> singular_values, double total_power, double noise_power)
    {
        if (!(total_power > 0.0) || !(noise_power > 0.0))
            throw DomainError("water_fill: power and noise must be positive");

        std::vector<std::size_t> order(singular_values.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return singular_values[a] > singular_values[b]; });

        // inverse gains noise / r^2 of the strictly positive channels, ascending
        std::vector<double> floor;
        for (std::size_t idx : order)
        {
            const double r = singular_values[idx];
            if (!std::isfinite(r) || r < 0.0)
                throw NumericalError("water_fill: singular values must be finite and non-negative");
            if (r > 0.0)
                floor.push_back(noise_power / (r * r));
        }
        if (floor.empty())
            throw NumericalError("water_fill: all singular values are zero");

        // largest active set m whose level stays above the m-th floor
        double level = 0.0;
        std::size_t active = 0;
        double partial = 0.0;
        for (std::size_t m = 1; m <= floor.size(); ++m)
        {
            partial += floor[m - 1];
            const double candidate = (total_power + partial) / static_cast<double>(m);
            if (candidate > floor[m - 1])
            {
                level = candidate;
                active = m;
            }
            else
                break;
        }

        WaterFillResult out;
        out.water_level = level;
        out.active_count = static_cast<int>(active);
        out.allocations.assign(singular_values.size(), 0.0);
        for (std::size_t pos = 0; pos < active; ++pos)
            out.allocations[order[pos]] = level - floor[pos];

        // level - floor cancels badly when the floors dwarf the budget; spread the
        // residual so the allocations sum to total_power
        for (int pass = 0; pass < 2; ++pass)
        {
            double used = 0.0;
            for (std::size_t pos = 0; pos < active; ++pos)
                used += out.allocations[order[pos]];
            const double share = (total_power - used) / static_cast<double>(active);
            for (std::size_t pos = 0; pos < active; ++pos)
                out.allocations[order[pos]] = std::max(0.0, out.allocations[order[pos]] + share);
        }
        return out;
    }

    double capacity_from_singular_values(std::span<const double> singular_values, double total_power,
                                         double noise_power, std::optional<int> stream_cap)
    {
        std::vector<double> s(singular_values.begin(), singular_values.end());
        std::sort(s.begin(), s.end(), std::greater<>());
        if (stream_cap)
        {
            if (*stream_cap < 1)
                throw DomainError("capacity: stream cap must be positive");
            if (static_cast<std::size_t>(*stream_cap) < s.size())
                s.resize(static_cast<std::size_t>(*stream_cap));
        }
        if (s.empty() || s.front() <= 0.0)
            return 0.0;
        const WaterFillResult wf = water_fill(s, total_power, noise_power);
        double c = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i)
            c += std::log2(1.0 + wf.allocations[i] * s[i] * s[i] / noise_power);
        return c;
    }

    double capacity(const Eigen::MatrixXcd &h, double total_power, double noise_power, std::optional<int> stream_cap)
    {
        const Eigen::VectorXd s = singular_values(h);
        return capacity_from_singular_values(std::span<const double>(s.data(), static_cast<std::size_t>(s.size())),
                                             total_power, noise_power, stream_cap);
    }

    int numerical_rank(std::span<const double> singular_values, double gap_threshold)
    {
        if (!(gap_threshold > 1.0))
            throw DomainError("numerical_rank: gap threshold must exceed 1");
        std::vector<double> s(singular_values.begin(), singular_values.end());
        std::sort(s.begin(), s.end(), std::greater<>());
        const int n = static_cast<int>(s.size());
        if (n == 0)
            return 0;
        if (s.front() <= 0.0)
            return 0;
        const double floor = 1e-12 * s.front();
        for (int r = n - 1; r >= 1; --r)
        {
            const double upper = s[static_cast<std::size_t>(r - 1)];
            const double lower = s[static_cast<std::size_t>(r)];
            if (upper > floor && (lower == 0.0 || upper / lower >= gap_threshold))
                return r;
        }
        return n;
    }

    int numerical_rank(const Eigen::MatrixXcd &h, double gap_threshold)
    {
        const Eigen::VectorXd s = singular_values(h);
        return numerical_rank(std::span<const double>(s.data(), static_cast<std::size_t>(s.size())), gap_threshold);
    }
}
