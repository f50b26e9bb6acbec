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

#ifndef WSMS_GEOMETRY_HPP
#define WSMS_GEOMETRY_HPP

#include <Eigen/Core>

#include <vector>

namespace wsms
{
    constexpr double speed_of_light = 299792458.0; // m/s

    inline double wavelength_from_frequency(double frequency_hz) { return speed_of_light / frequency_hz; }

    // Integer grid position of a subarray reference point on the x-z plane.
    struct GridIndex
    {
        int x = 0;
        int z = 0;
        bool operator==(const GridIndex &) const = default;
    };

    // Geometry of one terminal. All subarrays are identical uniform planar arrays
    // with half-wavelength spacing; their first elements (reference points) sit on
    // a grid_x by grid_z lattice with pitch subarray_spacing.
    //
    // Element ordering is subarray-major, and row-major inside a subarray:
    // flat index = j * (rows * cols) + n_L * cols + n_W, where n_L runs along x and n_W along z.
    struct ArrayLayout
    {
        int n_antennas = 1;
        int k = 1;               // number of subarrays
        int subarray_rows = 1;   // N_L, elements along x
        int subarray_cols = 1;   // N_W, elements along z
        int grid_x = 1;          // subarrays along x
        int grid_z = 1;          // subarrays along z
        double element_spacing = 0.0;  // d_a [m]
        double subarray_spacing = 0.0; // d_s [m]
        double origin_y = 0.0;         // 0 at the transmitter, D at the receiver [m]
        std::vector<GridIndex> ref_indices;

        int antennas_per_subarray() const { return subarray_rows * subarray_cols; }

        // Reference point of subarray j in array-local coordinates [m].
        Eigen::Vector3d reference_point(int j) const;

        // Position of antenna idx (flat ordering above) in array-local coordinates [m].
        Eigen::Vector3d element_position(int idx) const;

        // All element positions, one column per antenna.
        Eigen::Matrix3Xd element_positions() const;
    };

    // Subarray counts k with k | n_t, k | n_r and k^2 <= min(n_t, n_r), ascending.
    // With include_oversized, the square bound is dropped (all common divisors).
    std::vector<int> feasible_k_set(int n_t, int n_r, bool include_oversized = false);

    // Smallest subarray spacing without overlap: max(rows, cols) * d_a.
    double min_subarray_spacing(int n_antennas, int k, double wavelength);

    // Largest subarray spacing whose array diagonal stays within max_aperture.
    // k == 1 returns min_subarray_spacing; the result may fall below the minimum
    // when the cap is too tight, which callers treat as an empty interval.
    double max_subarray_spacing(int n_antennas, int k, double wavelength, double max_aperture);

    // Near-square grid of near-square subarrays. k == 1 ignores subarray_spacing.
    // Throws DomainError when k does not divide n_antennas or the spacing overlaps.
    ArrayLayout build_layout(int n_antennas, int k, double subarray_spacing, double wavelength, double origin_y);

    // LoS distance between rx reference m and tx reference n on parallel planes D apart.
    double reference_distance_los(const ArrayLayout &tx, const ArrayLayout &rx, double distance, int m, int n);

    // Ground-bounce length by the image method; tx and rx are mounted at heights h_t, h_r
    // (z offsets are measured from the mounting height).
    double reference_distance_reflected(const ArrayLayout &tx, const ArrayLayout &rx, double distance,
                                        double tx_height, double rx_height, int m, int n);

    // Bounce off a vertical wall parallel to the y-z plane at x = wall_offset (image method in x).
    double reference_distance_wall(const ArrayLayout &tx, const ArrayLayout &rx, double distance,
                                   double wall_offset, int m, int n);

    struct Aperture
    {
        double diagonal = 0.0;          // S [m]
        double rayleigh_distance = 0.0; // 2 S^2 / lambda [m]
    };

    Aperture aperture_and_rayleigh(const ArrayLayout &layout, double wavelength);

    inline double rayleigh_distance(double aperture, double wavelength) { return 2.0 * aperture * aperture / wavelength; }

    // Aperture at which the Rayleigh distance equals the link distance: sqrt(lambda D / 2).
    double near_field_aperture(double wavelength, double distance);

    // Most-square factorization n = a * b with a <= b.
    std::pair<int, int> near_square_factors(int n);
}

#endif
