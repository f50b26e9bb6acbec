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
#include "wsms/sweep.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace wsms;

namespace
{
    std::string csv(const SweepResult &r)
    {
        std::ostringstream out;
        write_csv(out, r);
        return out.str();
    }
}

TEST(ParseAxis, AcceptsEveryName)
{
    EXPECT_EQ(parse_axis("rho=-10:20:5").name, AxisName::transmit_power);
    EXPECT_EQ(parse_axis("k=1:8:1").name, AxisName::subarrays);
    EXPECT_EQ(parse_axis("ds=0.01:0.2:0.01").name, AxisName::spacing);
    EXPECT_EQ(parse_axis("d_s=0.01:0.2:0.01").name, AxisName::spacing);
    EXPECT_EQ(parse_axis("N=16:64:16").name, AxisName::antennas);
    EXPECT_EQ(parse_axis("D=60:100:10").name, AxisName::distance);
}

TEST(ParseAxis, ExpandsInclusiveRange)
{
    EXPECT_EQ(parse_axis("rho=-10:20:5").values(), (std::vector<double>{-10, -5, 0, 5, 10, 15, 20}));
    EXPECT_EQ(parse_axis("D=60:60:1").values(), (std::vector<double>{60}));
    EXPECT_EQ(parse_axis("ds=0.1:0.3:0.1").values().size(), 3u);
}

TEST(ParseAxis, RejectsMalformedSpecs)
{
    for (const char *bad : {"rho", "rho=1:2", "rho=1:2:0", "rho=5:1:1", "speed=1:2:1", "rho=a:2:1", "rho=1:2:1:4", "rho=1::1"})
        EXPECT_THROW(parse_axis(bad), UsageError) << bad;
}

TEST(ParseArchitectures, ListAndErrors)
{
    EXPECT_EQ(parse_architectures("wsms,planar-baseline,los-mimo"),
              (std::vector<SweepArchitecture>{SweepArchitecture::wsms, SweepArchitecture::planar_baseline,
                                              SweepArchitecture::los_mimo}));
    EXPECT_THROW(parse_architectures("wsms,hybrid"), UsageError);
    EXPECT_THROW(parse_architectures(""), UsageError);
}

TEST(RunSweep, PowerAxisTimesThreeArchitectures)
{
    SweepOptions o;
    o.axes = {parse_axis("rho=-10:20:5")};
    const SweepResult r = run_sweep(ScenarioConfig{}, o);
    EXPECT_EQ(r.points, 7);
    ASSERT_EQ(r.rows.size(), 21u);
    EXPECT_EQ(r.failed, 0);
    for (std::size_t i = 0; i < r.rows.size(); ++i)
    {
        EXPECT_EQ(r.rows[i].scenario_id, static_cast<int>(i / 3));
        EXPECT_EQ(r.rows[i].architecture, o.architectures[i % 3]);
        EXPECT_LE(r.rows[i].se, r.rows[i].capacity + 1e-6);
        EXPECT_GT(r.rows[i].ee, 0.0);
        EXPECT_EQ(r.rows[i].wall_ms, 0.0);
    }
}

TEST(RunSweep, SubarrayAxisReportsInfeasiblePointsPerRow)
{
    SweepOptions o;
    o.axes = {parse_axis("k=1:8:1")};
    o.architectures = {SweepArchitecture::wsms};
    ScenarioConfig c;
    c.transmit_power_dbm = {30.0};
    const SweepResult r = run_sweep(c, o);
    ASSERT_EQ(r.rows.size(), 8u);
    for (const auto &row : r.rows)
    {
        const bool feasible = row.scenario_id + 1 == 1 || row.scenario_id + 1 == 2 || row.scenario_id + 1 == 4 ||
                              row.scenario_id + 1 == 8;
        EXPECT_EQ(row.status == "ok", feasible) << row.scenario_id << " " << row.status;
        if (feasible)
        {
            EXPECT_NEAR(row.se, row.capacity, 1e-6 * row.capacity);
        }
        else
        {
            EXPECT_TRUE(std::isnan(row.se));
        }
    }
    EXPECT_EQ(r.failed, 4);
    // more subarrays buy spatial multiplexing at 30 dBm
    EXPECT_GT(r.rows[7].capacity, r.rows[0].capacity);
}

TEST(RunSweep, WorkerCountDoesNotChangeOutput)
{
    SweepOptions o;
    o.axes = {parse_axis("D=60:100:20"), parse_axis("rho=0:30:15")};
    o.architectures = parse_architectures("wsms,planar-baseline,aosa,los-mimo");
    o.workers = 1;
    const std::string serial = csv(run_sweep(ScenarioConfig{}, o));
    o.workers = 4;
    EXPECT_EQ(csv(run_sweep(ScenarioConfig{}, o)), serial);
    EXPECT_EQ(csv(run_sweep(ScenarioConfig{}, o)), serial);
}

TEST(RunSweep, CsvHeaderAndNumberFormat)
{
    SweepOptions o;
    o.architectures = {SweepArchitecture::planar_baseline};
    const std::string text = csv(run_sweep(ScenarioConfig{}, o));
    EXPECT_EQ(text.substr(0, text.find('\n')),
              "scenario_id,architecture,N_t,N_r,k,d_s,rho_dBm,D,SE,capacity,power_W,EE,wall_ms,status");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_number(60.0), "60");
    EXPECT_EQ(format_number(NAN), "nan");
}

TEST(RunSweep, AntennaAxisAndSpacingAxis)
{
    SweepOptions o;
    o.axes = {parse_axis("N=16:64:48"), parse_axis("ds=0.1:0.2:0.1")};
    o.architectures = {SweepArchitecture::wsms};
    ScenarioConfig c;
    c.transmit_power_dbm = {30.0};
    const SweepResult r = run_sweep(c, o);
    ASSERT_EQ(r.rows.size(), 4u);
    EXPECT_EQ(r.rows[0].n_tx, 16);
    EXPECT_EQ(r.rows[3].n_tx, 64);
    for (const auto &row : r.rows)
    {
        EXPECT_EQ(row.status, "ok");
        if (row.k > 1)
        {
            EXPECT_DOUBLE_EQ(row.spacing, row.scenario_id % 2 ? 0.2 : 0.1);
        }
    }
}

TEST(RunSweep, TimingFlagFillsWallClock)
{
    SweepOptions o;
    o.architectures = {SweepArchitecture::wsms};
    o.timing = true;
    EXPECT_GT(run_sweep(ScenarioConfig{}, o).rows[0].wall_ms, 0.0);
}
