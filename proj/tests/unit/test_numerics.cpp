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

#include "oracles.hpp"

#include "wsms/arrayconfig.hpp"
#include "wsms/errors.hpp"
#include "wsms/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

using namespace wsms;

namespace
{
    std::vector<double> random_spectrum(std::mt19937_64 &rng, int max_len = 12)
    {
        std::uniform_int_distribution<int> len(1, max_len);
        std::uniform_real_distribution<double> log_sv(-3.0, 1.0);
        std::vector<double> r(static_cast<std::size_t>(len(rng)));
        for (double &x : r)
            x = std::pow(10.0, log_sv(rng));
        return r;
    }
}

TEST(Svd, IdentityAndOuterProduct)
{
    const Eigen::VectorXd s = singular_values(Eigen::MatrixXcd::Identity(3, 3));
    EXPECT_LT((s - Eigen::VectorXd::Ones(3)).cwiseAbs().maxCoeff(), 1e-15);

    Eigen::VectorXcd a(3);
    Eigen::VectorXcd b(2);
    a << cdouble(1, 1), cdouble(0, 2), cdouble(-1, 0);
    b << cdouble(3, 0), cdouble(0, -4);
    const Eigen::VectorXd r = singular_values(a * b.adjoint());
    EXPECT_NEAR(r[0], a.norm() * b.norm(), 1e-13);
    EXPECT_LT(r[1], 1e-13);
}

TEST(Svd, FactorsAreUnitaryAndReconstruct)
{
    std::mt19937_64 rng(11);
    const Eigen::MatrixXcd h = oracle::random_complex(8, 6, rng);
    const SvdResult d = svd(h);
    EXPECT_LT((d.u.adjoint() * d.u - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((d.v.adjoint() * d.v - Eigen::MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-10);
    Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Zero(8, 6);
    for (int i = 0; i < 6; ++i)
        sigma(i, i) = d.singular_values[i];
    EXPECT_LT((d.u * sigma * d.v.adjoint() - h).cwiseAbs().maxCoeff(), 1e-12);
    for (int i = 1; i < 6; ++i)
        EXPECT_GE(d.singular_values[i - 1], d.singular_values[i]);
}

TEST(Svd, RejectsNonFiniteInput)
{
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(2, 2);
    h(0, 1) = cdouble(std::numeric_limits<double>::quiet_NaN(), 0.0);
    EXPECT_THROW(svd(h), NumericalError);
}

TEST(WaterFill, SingleChannel)
{
    const std::vector<double> r{1.0};
    const WaterFillResult w = water_fill(r, 1.0, 1.0);
    EXPECT_DOUBLE_EQ(w.allocations[0], 1.0);
    EXPECT_DOUBLE_EQ(w.water_level, 2.0);
    EXPECT_EQ(w.active_count, 1);
}

TEST(WaterFill, SymmetricChannels)
{
    const std::vector<double> r{1.0, 1.0};
    const WaterFillResult w = water_fill(r, 2.0, 1.0);
    EXPECT_DOUBLE_EQ(w.allocations[0], 1.0);
    EXPECT_DOUBLE_EQ(w.allocations[1], 1.0);
}

TEST(WaterFill, HandSolvedKktPoint)
{
    const std::vector<double> r{2.0, 1.0};
    const WaterFillResult w = water_fill(r, 3.0, 1.0);
    EXPECT_NEAR(w.water_level, 2.125, 1e-15);
    EXPECT_NEAR(w.allocations[0], 1.875, 1e-15);
    EXPECT_NEAR(w.allocations[1], 1.125, 1e-15);
    double level = 0.0;
    const auto brute = oracle::bisection_water_fill(r, 3.0, 1.0, &level);
    EXPECT_NEAR(level, 2.125, 1e-12);
    EXPECT_NEAR(brute[0], 1.875, 1e-12);
}

TEST(WaterFill, WeakChannelStaysDry)
{
    const std::vector<double> r{1.0, 1e-3};
    const WaterFillResult w = water_fill(r, 1.0, 1.0);
    EXPECT_EQ(w.active_count, 1);
    EXPECT_EQ(w.allocations[1], 0.0);
}

TEST(WaterFill, AllocationsFollowInputOrder)
{
    const std::vector<double> r{1.0, 2.0};
    const WaterFillResult w = water_fill(r, 3.0, 1.0);
    EXPECT_NEAR(w.allocations[0], 1.125, 1e-15);
    EXPECT_NEAR(w.allocations[1], 1.875, 1e-15);
}

TEST(WaterFill, RejectsDegenerateInput)
{
    const std::vector<double> zeros{0.0, 0.0};
    EXPECT_THROW(water_fill(zeros, 1.0, 1.0), NumericalError);
    const std::vector<double> r{1.0};
    EXPECT_THROW(water_fill(r, -1.0, 1.0), DomainError);
    EXPECT_THROW(water_fill(r, 1.0, 0.0), DomainError);
}

TEST(WaterFill, MatchesBisectionAndConservesPower)
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> log_p(-3.0, 3.0);
    for (int trial = 0; trial < 500; ++trial)
    {
        const std::vector<double> r = random_spectrum(rng);
        const double total = std::pow(10.0, log_p(rng));
        const WaterFillResult w = water_fill(r, total, 1.0);
        const std::vector<double> ref = oracle::bisection_water_fill(r, total, 1.0);
        double sum = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i)
        {
            EXPECT_NEAR(w.allocations[i], ref[i], 1e-8 * std::max(1.0, total));
            EXPECT_GE(w.allocations[i], 0.0);
            EXPECT_EQ(w.allocations[i] > 0.0, w.water_level > 1.0 / (r[i] * r[i]));
            sum += w.allocations[i];
        }
        EXPECT_NEAR(sum, total, 1e-9 * total);
    }
}

TEST(WaterFill, NonDecreasingInTotalPower)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial)
    {
        const std::vector<double> r = random_spectrum(rng);
        WaterFillResult prev = water_fill(r, 1e-3, 1.0);
        for (double p = 2e-3; p < 1e3; p *= 2.0)
        {
            const WaterFillResult next = water_fill(r, p, 1.0);
            for (std::size_t i = 0; i < r.size(); ++i)
                EXPECT_GE(next.allocations[i], prev.allocations[i] - 1e-12);
            prev = next;
        }
    }
}

TEST(WaterFill, SortedSpectrumGivesSortedAllocations)
{
    std::vector<double> r{3.0, 2.0, 1.0, 0.5, 0.1};
    const WaterFillResult w = water_fill(r, 4.0, 1.0);
    for (std::size_t i = 1; i < r.size(); ++i)
        EXPECT_GE(w.allocations[i - 1], w.allocations[i]);
}

TEST(Capacity, IdentityAndZero)
{
    EXPECT_NEAR(capacity(Eigen::MatrixXcd::Identity(2, 2), 2.0, 1.0), 2.0, 1e-15);
    EXPECT_EQ(capacity(Eigen::MatrixXcd::Zero(3, 3), 2.0, 1.0), 0.0);
}

TEST(Capacity, MatchesLogDetOracle)
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial)
    {
        const Eigen::MatrixXcd h = oracle::random_complex(4, 4, rng);
        for (double rho : {0.1, 1.0, 10.0})
            EXPECT_NEAR(capacity(h, rho, 1.0), oracle::logdet_capacity(h, rho, 1.0), 1e-9);
    }
}

TEST(Capacity, StreamCapUsesLargestSingularValues)
{
    const std::vector<double> r{1.0, 3.0, 2.0};
    const std::vector<double> top{3.0, 2.0};
    EXPECT_NEAR(capacity_from_singular_values(r, 5.0, 1.0, 2), capacity_from_singular_values(top, 5.0, 1.0), 1e-14);
    EXPECT_LT(capacity_from_singular_values(r, 5.0, 1.0, 2), capacity_from_singular_values(r, 5.0, 1.0));
}

TEST(Capacity, MonotoneInPowerAndSingularValues)
{
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> pick(0, 100);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::vector<double> r = random_spectrum(rng);
        const double c = capacity_from_singular_values(r, 1.0, 1.0);
        EXPECT_GE(capacity_from_singular_values(r, 1.5, 1.0), c);
        r[static_cast<std::size_t>(pick(rng)) % r.size()] *= 1.3;
        EXPECT_GE(capacity_from_singular_values(r, 1.0, 1.0), c - 1e-12);
    }
}

TEST(NumericalRank, SimpleMatrices)
{
    EXPECT_EQ(numerical_rank(Eigen::MatrixXcd::Identity(5, 5)), 5);
    Eigen::VectorXcd a = Eigen::VectorXcd::LinSpaced(4, 1.0, 4.0);
    EXPECT_EQ(numerical_rank(Eigen::MatrixXcd(a * a.adjoint())), 1);
    const std::vector<double> s{1.0, 0.5, 1e-5, 1e-6};
    EXPECT_EQ(numerical_rank(s), 2);
    EXPECT_EQ(numerical_rank(s, 1e6), 4);
}

TEST(NumericalRank, WsmsChannelAtOptimizedSpacingHasRankKNp)
{
    LinkScenario s;
    s.wavelength = 1e-3;
    s.n_tx = s.n_rx = 16;
    s.k_override = 2;
    s.distances = {{40.0, 1.0}};
    const ConfigSolution sol = dlr_select(s);
    const PipelineResult r = design_at(s, 2, sol.subarray_spacing, 40.0);
    EXPECT_EQ(numerical_rank(r.channel.entries), 4);
}

TEST(PowerUnits, DbmConversionRoundTrips)
{
    EXPECT_DOUBLE_EQ(dbm_to_watts(30.0), 1.0);
    EXPECT_DOUBLE_EQ(dbm_to_watts(0.0), 1e-3);
    EXPECT_NEAR(watts_to_dbm(dbm_to_watts(-76.2)), -76.2, 1e-12);
}
