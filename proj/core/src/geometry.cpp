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

#include "wsms/geometry.hpp"

#include "wsms/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace wsms
{
    std::pair<int, int> near_square_factors(int n)
    {
        if (n < 1)
            throw DomainError("near_square_factors: n must be positive");
        int a = static_cast<int>(std::sqrt(static_cast<double>(n)));
        while (a > 1 && n % a != 0)
            --a;
        return {a, n / a};
    }

    Eigen::Vector3d ArrayLayout::reference_point(int j) const
    {
        const GridIndex &g = ref_indices.at(static_cast<std::size_t>(j));
        return {g.x * subarray_spacing, origin_y, g.z * subarray_spacing};
    }

    Eigen::Vector3d ArrayLayout::element_position(int idx) const
    {
        if (idx < 0 || idx >= n_antennas)
            throw DomainError("element_position: index out of range");
        const int per = antennas_per_subarray();
        const int j = idx / per;
        const int local = idx % per;
        const int n_l = local / subarray_cols;
        const int n_w = local % subarray_cols;
        Eigen::Vector3d p = reference_point(j);
        p.x() += n_l * element_spacing;
        p.z() += n_w * element_spacing;
        return p;
    }

    Eigen::Matrix3Xd ArrayLayout::element_positions() const
    {
        Eigen::Matrix3Xd out(3, n_antennas);
        for (int i = 0; i < n_antennas; ++i)
            out.col(i) = element_position(i);
        return out;
    }

    std::vector<int> feasible_k_set(int n_t, int n_r, bool include_oversized)
    {
        if (n_t < 1 || n_r < 1)
            throw DomainError("feasible_k_set: antenna counts must be positive");
        const int n_min = std::min(n_t, n_r);
        std::vector<int> out;
        for (int k = 1; k <= n_min; ++k)
        {
            if (n_t % k != 0 || n_r % k != 0)
                continue;
            if (!include_oversized && static_cast<long long>(k) * k > n_min)
                continue;
            out.push_back(k);
        }
        return out;
    }

    double min_subarray_spacing(int n_antennas, int k, double wavelength)
    {
        if (k < 1 || n_antennas % k != 0)
            throw DomainError("min_subarray_spacing: k must divide the antenna count");
        const auto [rows, cols] = near_square_factors(n_antennas / k);
        return std::max(rows, cols) * wavelength / 2.0;
    }

    double max_subarray_spacing(int n_antennas, int k, double wavelength, double max_aperture)
    {
        const double d_min = min_subarray_spacing(n_antennas, k, wavelength);
        if (k == 1)
            return d_min;
        const auto [gz, gx] = near_square_factors(k);
        const auto [rows, cols] = near_square_factors(n_antennas / k);
        const double d_a = wavelength / 2.0;
        const double ax = gx - 1.0, az = gz - 1.0;
        const double bx = (rows - 1.0) * d_a, bz = (cols - 1.0) * d_a;
        // |(ax d + bx, az d + bz)| = max_aperture, positive root
        const double qa = ax * ax + az * az;
        const double qb = 2.0 * (ax * bx + az * bz);
        const double qc = bx * bx + bz * bz - max_aperture * max_aperture;
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc < 0.0)
            return 0.0;
        return (-qb + std::sqrt(disc)) / (2.0 * qa);
    }

    ArrayLayout build_layout(int n_antennas, int k, double subarray_spacing, double wavelength, double origin_y)
    {
        if (n_antennas < 1 || k < 1)
            throw DomainError("build_layout: antenna count and k must be positive");
        if (n_antennas % k != 0)
            throw DomainError("build_layout: k = " + std::to_string(k) + " does not divide " + std::to_string(n_antennas));
        if (!(wavelength > 0.0))
            throw DomainError("build_layout: wavelength must be positive");

        ArrayLayout layout;
        layout.n_antennas = n_antennas;
        layout.k = k;
        const auto [rows, cols] = near_square_factors(n_antennas / k);
        layout.subarray_rows = rows;
        layout.subarray_cols = cols;
        const auto [gz, gx] = near_square_factors(k);
        layout.grid_x = gx;
        layout.grid_z = gz;
        layout.element_spacing = wavelength / 2.0;
        layout.origin_y = origin_y;

        const double d_min = std::max(rows, cols) * layout.element_spacing;
        if (k == 1)
            layout.subarray_spacing = d_min;
        else
        {
            if (!(subarray_spacing >= d_min * (1.0 - 1e-12)))
                throw DomainError("build_layout: subarray spacing " + std::to_string(subarray_spacing) +
                                  " m overlaps (minimum " + std::to_string(d_min) + " m)");
            layout.subarray_spacing = subarray_spacing;
        }

        layout.ref_indices.reserve(static_cast<std::size_t>(k));
        for (int z = 0; z < gz; ++z)
            for (int x = 0; x < gx; ++x)
                layout.ref_indices.push_back({x, z});
        return layout;
    }

    namespace
    {
        void check_pair(const ArrayLayout &tx, const ArrayLayout &rx, int m, int n)
        {
            if (m < 0 || m >= static_cast<int>(rx.ref_indices.size()))
                throw DomainError("reference distance: rx index out of range");
            if (n < 0 || n >= static_cast<int>(tx.ref_indices.size()))
                throw DomainError("reference distance: tx index out of range");
        }
    }

    double reference_distance_los(const ArrayLayout &tx, const ArrayLayout &rx, double distance, int m, int n)
    {
        check_pair(tx, rx, m, n);
        if (!(distance > 0.0))
            throw DomainError("reference distance: link distance must be positive");
        const GridIndex &r = rx.ref_indices[static_cast<std::size_t>(m)];
        const GridIndex &t = tx.ref_indices[static_cast<std::size_t>(n)];
        const double dx = r.x * rx.subarray_spacing - t.x * tx.subarray_spacing;
        const double dz = r.z * rx.subarray_spacing - t.z * tx.subarray_spacing;
        return std::sqrt(dx * dx + distance * distance + dz * dz);
    }

    namespace
    {
        double array_height_extent(const ArrayLayout &a)
        {
            return (a.grid_z - 1) * a.subarray_spacing + (a.subarray_cols - 1) * a.element_spacing;
        }
    }

    double reference_distance_reflected(const ArrayLayout &tx, const ArrayLayout &rx, double distance,
                                        double tx_height, double rx_height, int m, int n)
    {
        check_pair(tx, rx, m, n);
        if (!(distance > 0.0))
            throw DomainError("reference distance: link distance must be positive");
        if (!(tx_height > 0.0) || !(rx_height > 0.0))
            throw DomainError("reference distance: array reference points must lie above ground");
        if (tx_height + array_height_extent(tx) <= 0.0 || rx_height + array_height_extent(rx) <= 0.0)
            throw DomainError("reference distance: array extends below ground");
        const GridIndex &r = rx.ref_indices[static_cast<std::size_t>(m)];
        const GridIndex &t = tx.ref_indices[static_cast<std::size_t>(n)];
        const double zt = tx_height + t.z * tx.subarray_spacing;
        const double zr = rx_height + r.z * rx.subarray_spacing;
        const double dx = r.x * rx.subarray_spacing - t.x * tx.subarray_spacing;
        const double dz = zt + zr;
        return std::sqrt(dx * dx + distance * distance + dz * dz);
    }

    double reference_distance_wall(const ArrayLayout &tx, const ArrayLayout &rx, double distance,
                                   double wall_offset, int m, int n)
    {
        check_pair(tx, rx, m, n);
        if (!(distance > 0.0))
            throw DomainError("reference distance: link distance must be positive");
        const GridIndex &r = rx.ref_indices[static_cast<std::size_t>(m)];
        const GridIndex &t = tx.ref_indices[static_cast<std::size_t>(n)];
        const double xt = t.x * tx.subarray_spacing;
        const double xr_image = 2.0 * wall_offset - r.x * rx.subarray_spacing;
        const double span_x = (tx.grid_x - 1) * tx.subarray_spacing;
        if (wall_offset > 0.0 ? wall_offset <= span_x : wall_offset >= 0.0)
            throw DomainError("reference distance: wall intersects the array footprint");
        const double dx = xr_image - xt;
        const double dz = r.z * rx.subarray_spacing - t.z * tx.subarray_spacing;
        return std::sqrt(dx * dx + distance * distance + dz * dz);
    }

    Aperture aperture_and_rayleigh(const ArrayLayout &layout, double wavelength)
    {
        const double lx = (layout.grid_x - 1) * layout.subarray_spacing + (layout.subarray_rows - 1) * layout.element_spacing;
        const double lz = (layout.grid_z - 1) * layout.subarray_spacing + (layout.subarray_cols - 1) * layout.element_spacing;
        Aperture a;
        a.diagonal = std::hypot(lx, lz);
        a.rayleigh_distance = rayleigh_distance(a.diagonal, wavelength);
        return a;
    }

    double near_field_aperture(double wavelength, double distance)
    {
        return std::sqrt(wavelength * distance / 2.0);
    }
}
