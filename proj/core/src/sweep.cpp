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

#include "wsms/sweep.hpp"

#include "wsms/errors.hpp"
#include "wsms/numerics.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <optional>
#include <ostream>
#include <thread>

namespace wsms
{
    std::vector<double> AxisSpec::values() const
    {
        std::vector<double> out;
        const double n = std::floor((stop - start) / step + 0.5 + 1e-9);
        for (long i = 0; i <= static_cast<long>(n); ++i)
            out.push_back(start + static_cast<double>(i) * step);
        return out;
    }

    AxisSpec parse_axis(std::string_view text)
    {
        const auto eq = text.find('=');
        if (eq == std::string_view::npos)
            throw UsageError("axis '" + std::string(text) + "' is not NAME=START:STOP:STEP");
        const std::string name(text.substr(0, eq));
        AxisSpec a;
        if (name == "rho")
            a.name = AxisName::transmit_power;
        else if (name == "k")
            a.name = AxisName::subarrays;
        else if (name == "ds" || name == "d_s")
            a.name = AxisName::spacing;
        else if (name == "N")
            a.name = AxisName::antennas;
        else if (name == "D")
            a.name = AxisName::distance;
        else
            throw UsageError("unknown axis '" + name + "' (expected rho, k, ds, N or D)");

        double parts[3];
        std::string_view rest = text.substr(eq + 1);
        for (int i = 0; i < 3; ++i)
        {
            const auto colon = rest.find(':');
            if ((i < 2) == (colon == std::string_view::npos))
                throw UsageError("axis '" + std::string(text) + "' is not NAME=START:STOP:STEP");
            const std::string field(rest.substr(0, colon));
            std::size_t used = 0;
            try
            {
                parts[i] = std::stod(field, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (field.empty() || used != field.size() || !std::isfinite(parts[i]))
                throw UsageError("axis '" + std::string(text) + "': '" + field + "' is not a number");
            rest = colon == std::string_view::npos ? std::string_view{} : rest.substr(colon + 1);
        }
        a.start = parts[0];
        a.stop = parts[1];
        a.step = parts[2];
        if (!(a.step > 0.0) || a.stop < a.start)
            throw UsageError("axis '" + std::string(text) + "' needs START <= STOP and STEP > 0");
        if (a.values().size() > 100000)
            throw UsageError("axis '" + std::string(text) + "' has too many points");
        return a;
    }

    std::string to_string(SweepArchitecture arch)
    {
        switch (arch)
        {
        case SweepArchitecture::wsms:
            return "wsms";
        case SweepArchitecture::planar_baseline:
            return "planar-baseline";
        case SweepArchitecture::aosa:
            return "aosa";
        case SweepArchitecture::los_mimo:
            return "los-mimo";
        }
        return "unknown";
    }

    std::vector<SweepArchitecture> parse_architectures(std::string_view text)
    {
        std::vector<SweepArchitecture> out;
        while (!text.empty())
        {
            const auto comma = text.find(',');
            const std::string item(text.substr(0, comma));
            if (item == "wsms")
                out.push_back(SweepArchitecture::wsms);
            else if (item == "planar-baseline" || item == "planar")
                out.push_back(SweepArchitecture::planar_baseline);
            else if (item == "aosa")
                out.push_back(SweepArchitecture::aosa);
            else if (item == "los-mimo")
                out.push_back(SweepArchitecture::los_mimo);
            else
                throw UsageError("unknown architecture '" + item + "'");
            text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        }
        if (out.empty())
            throw UsageError("architecture list is empty");
        return out;
    }

    namespace
    {
        struct Point
        {
            double rho_dbm = 0.0;
            std::optional<int> k;
            std::optional<double> spacing;
            std::optional<int> antennas;
            std::optional<double> distance;
        };

        std::vector<Point> expand(const ScenarioConfig &config, const std::vector<AxisSpec> &axes)
        {
            std::vector<Point> points(1);
            bool have_rho = false;
            for (const auto &axis : axes)
                have_rho = have_rho || axis.name == AxisName::transmit_power;
            if (!have_rho)
            {
                std::vector<Point> next;
                for (double rho : config.transmit_power_dbm)
                    next.push_back(Point{rho, {}, {}, {}, {}});
                points = next;
            }
            for (const auto &axis : axes)
            {
                std::vector<Point> next;
                for (const auto &p : points)
                    for (double v : axis.values())
                    {
                        Point q = p;
                        switch (axis.name)
                        {
                        case AxisName::transmit_power:
                            q.rho_dbm = v;
                            break;
                        case AxisName::subarrays:
                            q.k = static_cast<int>(std::lround(v));
                            break;
                        case AxisName::spacing:
                            q.spacing = v;
                            break;
                        case AxisName::antennas:
                            q.antennas = static_cast<int>(std::lround(v));
                            break;
                        case AxisName::distance:
                            q.distance = v;
                            break;
                        }
                        next.push_back(q);
                    }
                points = std::move(next);
            }
            return points;
        }

        ConfigSolution choose_configuration(LinkScenario s, const Point &p)
        {
            if (p.k && p.spacing)
                return {*p.k, *p.spacing, expected_capacity(s, *p.k, *p.spacing), SelectionMethod::dlr};
            if (p.k)
            {
                s.k_override = *p.k;
                return dlr_select(s);
            }
            if (p.spacing)
            {
                std::optional<ConfigSolution> best;
                for (int k : candidate_k(s))
                {
                    const SpacingBounds b = spacing_bounds(s, k);
                    const double spacing = k == 1 ? b.min : *p.spacing;
                    if (k > 1 && (spacing < b.min * (1.0 - 1e-12) || spacing > b.max * (1.0 + 1e-12)))
                        continue;
                    const double c = expected_capacity(s, k, spacing);
                    if (!best || c > best->objective_se + 1e-12 * std::max(1.0, best->objective_se))
                        best = ConfigSolution{k, spacing, c, SelectionMethod::dlr};
                }
                if (!best)
                    throw DomainError("no subarray count admits d_s = " + format_number(*p.spacing));
                return *best;
            }
            return dlr_select(s);
        }

        struct PointContext
        {
            const ScenarioConfig &config;
            const SweepOptions &options;
        };

        std::vector<SweepRow> evaluate_point(const PointContext &ctx, int index, const Point &p)
        {
            using clock = std::chrono::steady_clock;
            std::vector<SweepRow> rows;
            LinkScenario s;
            std::string setup_error;
            try
            {
                s = to_link_scenario(ctx.config, p.rho_dbm);
                if (p.antennas)
                    s.n_tx = s.n_rx = *p.antennas;
                if (p.distance)
                    s.distances = {{*p.distance, 1.0}};
                if (p.k)
                    s.k_override = *p.k;
                validate(s);
            }
            catch (const std::exception &e)
            {
                setup_error = e.what();
            }
            LinkScenario fallback;
            fallback.distances = ctx.config.distances;
            const double distance = setup_error.empty() ? s.nominal_distance()
                                                         : p.distance.value_or(fallback.nominal_distance());
            const double rho_w = dbm_to_watts(p.rho_dbm);

            std::optional<PipelineResult> design;
            std::string design_error = setup_error;
            double design_ms = 0.0;
            auto ensure_design = [&] {
                if (design || !design_error.empty())
                    return;
                const auto t0 = clock::now();
                try
                {
                    const ConfigSolution sol = choose_configuration(s, p);
                    design = design_at(s, sol.k, sol.subarray_spacing, distance);
                    design->solution = sol;
                }
                catch (const std::exception &e)
                {
                    design_error = e.what();
                }
                design_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
            };

            for (SweepArchitecture arch : ctx.options.architectures)
            {
                SweepRow row;
                row.scenario_id = index;
                row.architecture = arch;
                row.n_tx = p.antennas.value_or(ctx.config.n_tx);
                row.n_rx = p.antennas.value_or(ctx.config.n_rx);
                row.rho_dbm = p.rho_dbm;
                row.distance = distance;
                const auto t0 = clock::now();
                try
                {
                    if (!setup_error.empty())
                        throw DomainError(setup_error);
                    const int np = s.path_count();
                    double p_tx = 0.0;
                    double p_rx = 0.0;
                    switch (arch)
                    {
                    case SweepArchitecture::wsms:
                    {
                        ensure_design();
                        if (!design)
                            throw DomainError(design_error);
                        row.k = design->solution.k;
                        row.spacing = design->solution.subarray_spacing;
                        row.se = design->spectral_efficiency;
                        row.capacity = design->capacity;
                        p_tx = power_consumption(Architecture::wsms, s.n_tx, design->beamformers.tx_rf_chains(), row.k,
                                                 ctx.config.tx_power_model);
                        p_rx = power_consumption(Architecture::wsms, s.n_rx, design->beamformers.rx_rf_chains(), row.k,
                                                 ctx.config.rx_power_model);
                        break;
                    }
                    case SweepArchitecture::planar_baseline:
                        row.k = 1;
                        row.spacing = 0.0;
                        row.capacity = planar_baseline_capacity(s, distance);
                        row.se = row.capacity;
                        p_tx = power_consumption(Architecture::fully_connected, s.n_tx, np, 1, ctx.config.tx_power_model);
                        p_rx = power_consumption(Architecture::fully_connected, s.n_rx, np, 1, ctx.config.rx_power_model);
                        break;
                    case SweepArchitecture::aosa:
                    {
                        ensure_design();
                        if (!design)
                            throw DomainError(design_error);
                        row.k = design->solution.k;
                        row.spacing = spacing_bounds(s, row.k).min;
                        row.capacity = configuration_capacity(s, row.k, row.spacing, distance, CapacityRoute::dense);
                        row.se = row.capacity;
                        p_tx = power_consumption(Architecture::array_of_subarrays, s.n_tx, row.k * np, row.k,
                                                 ctx.config.tx_power_model);
                        p_rx = power_consumption(Architecture::array_of_subarrays, s.n_rx, row.k * np, row.k,
                                                 ctx.config.rx_power_model);
                        break;
                    }
                    case SweepArchitecture::los_mimo:
                    {
                        ensure_design();
                        if (!design)
                            throw DomainError(design_error);
                        const double aperture = aperture_and_rayleigh(design->tx, s.wavelength).diagonal;
                        row.k = 1;
                        row.spacing = 0.0;
                        row.capacity = los_mimo_capacity(s, distance, aperture);
                        row.se = row.capacity;
                        p_tx = power_consumption(Architecture::fully_digital, s.n_tx, s.n_tx, 1, ctx.config.tx_power_model);
                        p_rx = power_consumption(Architecture::fully_digital, s.n_rx, s.n_rx, 1, ctx.config.rx_power_model);
                        break;
                    }
                    }
                    row.power_w = total_link_power(p_tx, p_rx, rho_w);
                    row.ee = energy_efficiency(row.se, ctx.config.bandwidth, row.power_w);
                    if (row.se > row.capacity + 1e-6)
                        throw NumericalError("spectral efficiency exceeds capacity");
                }
                catch (const std::exception &e)
                {
                    const double nan = std::numeric_limits<double>::quiet_NaN();
                    row.se = row.capacity = row.power_w = row.ee = nan;
                    if (p.k)
                        row.k = *p.k;
                    if (p.spacing)
                        row.spacing = *p.spacing;
                    row.status = std::string("error: ") + e.what();
                }
                if (ctx.options.timing)
                {
                    row.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
                    if (arch != SweepArchitecture::planar_baseline)
                    {
                        row.wall_ms += design_ms;
                        design_ms = 0.0;
                    }
                }
                rows.push_back(std::move(row));
            }
            return rows;
        }
    }

    SweepResult run_sweep(const ScenarioConfig &config, const SweepOptions &options)
    {
        if (options.architectures.empty())
            throw UsageError("no architectures selected");
        const std::vector<Point> points = expand(config, options.axes);
        std::vector<std::vector<SweepRow>> slots(points.size());
        const PointContext ctx{config, options};

        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t i = next++; i < points.size(); i = next++)
                slots[i] = evaluate_point(ctx, static_cast<int>(i), points[i]);
        };
        const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(points.size())));
        std::vector<std::thread> pool;
        for (int w = 1; w < workers; ++w)
            pool.emplace_back(work);
        work();
        for (auto &t : pool)
            t.join();

        SweepResult result;
        result.points = static_cast<int>(points.size());
        for (auto &slot : slots)
            for (auto &row : slot)
            {
                if (row.status != "ok")
                    ++result.failed;
                result.rows.push_back(std::move(row));
            }
        return result;
    }

    const char *const sweep_csv_header =
        "scenario_id,architecture,N_t,N_r,k,d_s,rho_dBm,D,SE,capacity,power_W,EE,wall_ms,status";

    std::string format_number(double value)
    {
        if (std::isnan(value))
            return "nan";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", value);
        return buf;
    }

    namespace
    {
        std::string csv_field(const std::string &s)
        {
            if (s.find_first_of(",\"\n\r") == std::string::npos)
                return s;
            std::string out = "\"";
            for (char c : s)
            {
                if (c == '"')
                    out += '"';
                out += (c == '\n' || c == '\r') ? ' ' : c;
            }
            return out + "\"";
        }
    }

    void write_csv(std::ostream &out, const SweepResult &result)
    {
        out << sweep_csv_header << '\n';
        for (const auto &r : result.rows)
        {
            out << r.scenario_id << ',' << to_string(r.architecture) << ',' << r.n_tx << ',' << r.n_rx << ',' << r.k
                << ',' << format_number(r.spacing) << ',' << format_number(r.rho_dbm) << ','
                << format_number(r.distance) << ',' << format_number(r.se) << ',' << format_number(r.capacity) << ','
                << format_number(r.power_w) << ',' << format_number(r.ee) << ',' << format_number(r.wall_ms) << ','
                << csv_field(r.status) << '\n';
        }
    }
}
