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

#include "wsms/errors.hpp"
#include "wsms/geometry.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace wsms;

namespace
{
    constexpr double lambda_1mm = 1e-3;

    int ref_at(const ArrayLayout &layout, int x, int z)
    {
        const auto it = std::find(layout.ref_indices.begin(), layout.ref_indices.end(), GridIndex{x, z});
        return it == layout.ref_indices.end() ? -1 : static_cast<int>(it - layout.ref_indices.begin());
    }
}

TEST(FeasibleK, SmallSquareArrays)
{
    EXPECT_EQ(feasible_k_set(16, 16), (std::vector<int>{1, 2, 4}));
    EXPECT_EQ(feasible_k_set(1, 1), (std::vector<int>{1}));
    EXPECT_EQ(feasible_k_set(1024, 1024), (std::vector<int>{1, 2, 4, 8, 16, 32}));
}

TEST(FeasibleK, OversizedFlagDropsSquareBound)
{
    EXPECT_EQ(feasible_k_set(16, 16, true), (std::vector<int>{1, 2, 4, 8, 16}));
    EXPECT_EQ(feasible_k_set(12, 18, true), (std::vector<int>{1, 2, 3, 6}));
}

TEST(FeasibleK, MatchesBruteForceEnumeration)
{
    for (int nt = 1; nt <= 80; ++nt)
        for (int nr = 1; nr <= 80; nr += 7)
        {
            std::vector<int> expected;
            for (int k = 1; k <= std::min(nt, nr); ++k)
                if (nt % k == 0 && nr % k == 0 && k * k <= std::min(nt, nr))
                    expected.push_back(k);
            ASSERT_EQ(feasible_k_set(nt, nr), expected) << nt << " x " << nr;
        }
}

TEST(BuildLayout, SixteenAntennasFourSubarrays)
{
    const ArrayLayout l = build_layout(16, 4, 0.1, lambda_1mm, 0.0);
    EXPECT_EQ(l.grid_x, 2);
    EXPECT_EQ(l.grid_z, 2);
    EXPECT_EQ(l.subarray_rows, 2);
    EXPECT_EQ(l.subarray_cols, 2);
    EXPECT_EQ(l.ref_indices, (std::vector<GridIndex>{{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
}

TEST(BuildLayout, SingleSubarray)
{
    const ArrayLayout l = build_layout(16, 1, 0.0, lambda_1mm, 0.0);
    EXPECT_EQ(l.k, 1);
    EXPECT_EQ(l.subarray_rows, 4);
    EXPECT_EQ(l.subarray_cols, 4);
    EXPECT_EQ(l.ref_indices, (std::vector<GridIndex>{{0, 0}}));
    EXPECT_EQ(l.reference_point(0), Eigen::Vector3d::Zero());
}

TEST(BuildLayout, SixtyFourAntennasEightSubarrays)
{
    const ArrayLayout l = build_layout(64, 8, 0.2, lambda_1mm, 50.0);
    EXPECT_EQ(l.grid_x, 4);
    EXPECT_EQ(l.grid_z, 2);
    EXPECT_EQ(l.subarray_rows, 2);
    EXPECT_EQ(l.subarray_cols, 4);
    ASSERT_EQ(l.ref_indices.size(), 8u);
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b)
        {
            const Eigen::Vector3d d = l.reference_point(a) - l.reference_point(b);
            const double steps = std::hypot(l.ref_indices[a].x - l.ref_indices[b].x, l.ref_indices[a].z - l.ref_indices[b].z);
            EXPECT_NEAR(d.norm(), 0.2 * steps, 1e-12);
        }
    EXPECT_DOUBLE_EQ(l.reference_point(3).y(), 50.0);
}

TEST(BuildLayout, RejectsBadInputs)
{
    EXPECT_THROW(build_layout(16, 3, 0.1, lambda_1mm, 0.0), DomainError);
    EXPECT_THROW(build_layout(64, 4, 0.5 * min_subarray_spacing(64, 4, lambda_1mm), lambda_1mm, 0.0), DomainError);
    EXPECT_THROW(build_layout(16, 4, 0.1, -1.0, 0.0), DomainError);
}

TEST(BuildLayout, InvariantsHoldOnRandomLayouts)
{
    std::mt19937_64 rng(7);
    for (int n : {4, 16, 36, 64, 144, 256})
        for (int k : feasible_k_set(n, n))
        {
            const double lo = min_subarray_spacing(n, k, lambda_1mm);
            std::uniform_real_distribution<double> ds(lo, 10.0 * lo);
            const double spacing = ds(rng);
            const ArrayLayout l = build_layout(n, k, spacing, lambda_1mm, 0.0);
            EXPECT_EQ(l.subarray_rows * l.subarray_cols, n / k);
            EXPECT_EQ(l.grid_x * l.grid_z, k);
            EXPECT_GE(l.grid_x, l.grid_z);
            EXPECT_EQ(l.element_spacing, lambda_1mm / 2.0);
            EXPECT_GE(spacing, std::max(l.subarray_rows, l.subarray_cols) * l.element_spacing);

            std::set<std::pair<int, int>> seen;
            for (const auto &g : l.ref_indices)
                seen.insert({g.x, g.z});
            EXPECT_EQ(seen.size(), static_cast<std::size_t>(k));

            for (int j = 0; j < k; ++j)
            {
                const int right = ref_at(l, l.ref_indices[j].x + 1, l.ref_indices[j].z);
                if (right >= 0 && k > 1)
                {
                    EXPECT_NEAR((l.reference_point(right) - l.reference_point(j)).norm(), spacing, 1e-12 * spacing);
                }
                const int up = ref_at(l, l.ref_indices[j].x, l.ref_indices[j].z + 1);
                if (up >= 0 && k > 1)
                {
                    EXPECT_NEAR((l.reference_point(up) - l.reference_point(j)).norm(), spacing, 1e-12 * spacing);
                }
            }

            // no two elements coincide
            const Eigen::Matrix3Xd pos = l.element_positions();
            double closest = INFINITY;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    closest = std::min(closest, (pos.col(a) - pos.col(b)).norm());
            if (n > 1)
            {
                EXPECT_GE(closest, l.element_spacing * (1.0 - 1e-12));
            }
        }
}

TEST(SpacingBounds, MinimumIsSubarrayExtentAndMaximumRespectsAperture)
{
    EXPECT_DOUBLE_EQ(min_subarray_spacing(64, 8, lambda_1mm), 4 * 0.5e-3);
    const double hi = max_subarray_spacing(64, 8, lambda_1mm, 1.0);
    const ArrayLayout l = build_layout(64, 8, hi, lambda_1mm, 0.0);
    EXPECT_NEAR(aperture_and_rayleigh(l, lambda_1mm).diagonal, 1.0, 1e-12);
    EXPECT_LT(max_subarray_spacing(64, 8, lambda_1mm, 1e-3), min_subarray_spacing(64, 8, lambda_1mm));
}

TEST(ReferenceDistance, AlignedPointsGiveLinkDistance)
{
    const ArrayLayout tx = build_layout(16, 4, 0.1, lambda_1mm, 0.0);
    const ArrayLayout rx = build_layout(16, 4, 0.1, lambda_1mm, 40.0);
    for (int j = 0; j < 4; ++j)
        EXPECT_DOUBLE_EQ(reference_distance_los(tx, rx, 40.0, j, j), 40.0);
}

TEST(ReferenceDistance, OneGridStepAtFortyMetres)
{
    const ArrayLayout tx = build_layout(4, 2, 0.1, lambda_1mm, 0.0);
    const ArrayLayout rx = build_layout(4, 2, 0.1, lambda_1mm, 40.0);
    const int m = ref_at(rx, 1, 0);
    const int n = ref_at(tx, 0, 0);
    // high-precision value of sqrt(0.01 + 1600)
    EXPECT_NEAR(reference_distance_los(tx, rx, 40.0, m, n), 40.0001249998046881, 1e-12);
}

TEST(ReferenceDistance, OffsetThreeFourAtFiftyMetres)
{
    const ArrayLayout tx = build_layout(25, 25, 0.1, lambda_1mm, 0.0);
    const ArrayLayout rx = build_layout(25, 25, 0.1, lambda_1mm, 50.0);
    const int m = ref_at(rx, 3, 4);
    const int n = ref_at(tx, 0, 0);
    ASSERT_GE(m, 0);
    // sqrt(0.09 + 2500 + 0.16); the rounded hand value is 50.0025
    EXPECT_NEAR(reference_distance_los(tx, rx, 50.0, m, n), 50.0024999375031248, 1e-12);
    EXPECT_NEAR(reference_distance_los(tx, rx, 50.0, m, n), 50.0025, 1e-6);
}

TEST(ReferenceDistance, GroundBounceByImageMethod)
{
    const ArrayLayout tx = build_layout(16, 4, 0.1, lambda_1mm, 0.0);
    const ArrayLayout rx = build_layout(16, 4, 0.1, lambda_1mm, 50.0);
    EXPECT_NEAR(reference_distance_reflected(tx, rx, 50.0, 30.0, 30.0, 0, 0), 78.1024967590665439, 1e-12);
    EXPECT_THROW(reference_distance_reflected(tx, rx, 50.0, 0.0, 30.0, 0, 0), DomainError);
}

TEST(ReferenceDistance, PropertiesOverAllPairs)
{
    const ArrayLayout tx = build_layout(64, 16, 0.07, lambda_1mm, 0.0);
    const ArrayLayout rx = build_layout(64, 16, 0.07, lambda_1mm, 60.0);
    for (int m = 0; m < 16; ++m)
        for (int n = 0; n < 16; ++n)
        {
            const double los = reference_distance_los(tx, rx, 60.0, m, n);
            EXPECT_GT(reference_distance_reflected(tx, rx, 60.0, 30.0, 30.0, m, n), los);
            EXPECT_DOUBLE_EQ(los, reference_distance_los(tx, rx, 60.0, n, m));
            if (m == n)
            {
                EXPECT_EQ(los, 60.0);
            }
            else
            {
                EXPECT_GT(los, 60.0);
            }
            EXPECT_GT(reference_distance_wall(tx, rx, 60.0, 5.0, m, n), los);
        }
    EXPECT_THROW(reference_distance_wall(tx, rx, 60.0, 0.05, 0, 0), DomainError);
}

TEST(Aperture, NearFieldApertureAtFortyMetres)
{
    EXPECT_NEAR(near_field_aperture(lambda_1mm, 40.0), 0.141421356237, 1e-12);
    EXPECT_NEAR(rayleigh_distance(0.1414, lambda_1mm), 40.0, 0.02);
    EXPECT_NEAR(rayleigh_distance(near_field_aperture(lambda_1mm, 40.0), lambda_1mm), 40.0, 1e-9);
}

TEST(Aperture, SingleAntennaHasZeroAperture)
{
    const Aperture a = aperture_and_rayleigh(build_layout(1, 1, 0.0, lambda_1mm, 0.0), lambda_1mm);
    EXPECT_EQ(a.diagonal, 0.0);
    EXPECT_EQ(a.rayleigh_distance, 0.0);
}

TEST(Aperture, DiagonalOfContiguousArray)
{
    const ArrayLayout l = build_layout(16, 1, 0.0, lambda_1mm, 0.0);
    EXPECT_NEAR(aperture_and_rayleigh(l, lambda_1mm).diagonal, std::hypot(1.5e-3, 1.5e-3), 1e-15);
}

TEST(NearSquareFactors, Examples)
{
    EXPECT_EQ(near_square_factors(1), (std::pair<int, int>{1, 1}));
    EXPECT_EQ(near_square_factors(8), (std::pair<int, int>{2, 4}));
    EXPECT_EQ(near_square_factors(12), (std::pair<int, int>{3, 4}));
    EXPECT_EQ(near_square_factors(13), (std::pair<int, int>{1, 13}));
    EXPECT_EQ(near_square_factors(64), (std::pair<int, int>{8, 8}));
}
