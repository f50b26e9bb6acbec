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

#include "wsms/arrayconfig.hpp"
#include "wsms/beamforming.hpp"
#include "wsms/errors.hpp"
#include "wsms/numerics.hpp"
#include "wsms/power.hpp"
#include "wsms/scenario.hpp"
#include "wsms/sweep.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using nlohmann::json;

namespace
{
    enum ExitCode
    {
        exit_ok = 0,
        exit_usage = 1,
        exit_config = 2,
        exit_numerical = 3
    };

    struct Common
    {
        std::string config_path;
        bool json_output = false;
    };

    wsms::ScenarioConfig load(const Common &c)
    {
        return c.config_path.empty() ? wsms::ScenarioConfig{} : wsms::load_scenario(c.config_path);
    }

    void add_common(CLI::App *cmd, Common &c)
    {
        cmd->add_option("--config", c.config_path, "Scenario file (YAML)");
        cmd->add_flag("--json", c.json_output, "Machine-readable output");
    }

    std::string num(double v) { return wsms::format_number(v); }

    // Fixed (k, d_s) when both are given, otherwise the DLR choice (honouring k alone).
    wsms::ConfigSolution resolve_configuration(const wsms::LinkScenario &scenario, std::optional<int> k,
                                               std::optional<double> spacing)
    {
        if (k && spacing)
            return {*k, *spacing, wsms::expected_capacity(scenario, *k, *spacing), wsms::SelectionMethod::dlr};
        if (spacing)
            throw wsms::UsageError("--ds requires --k");
        wsms::LinkScenario s = scenario;
        if (k)
            s.k_override = *k;
        return wsms::dlr_select(s);
    }

    int run_channel(const Common &c, std::optional<int> k, std::optional<double> spacing)
    {
        const wsms::LinkScenario s = wsms::to_link_scenario(load(c));
        wsms::validate(s);
        const double distance = s.nominal_distance();
        const wsms::ConfigSolution sol = resolve_configuration(s, k, spacing);
        const wsms::ArrayLayout tx = wsms::build_layout(s.n_tx, sol.k, sol.subarray_spacing, s.wavelength, 0.0);
        const wsms::ArrayLayout rx = wsms::build_layout(s.n_rx, sol.k, sol.subarray_spacing, s.wavelength, distance);
        const wsms::PathSet paths = wsms::path_gains_backhaul(s.budget_at(distance));
        const wsms::ChannelMatrix h = wsms::assemble_wsms_channel(paths, tx, rx, s.geometry_at(distance));
        const Eigen::VectorXd sv = wsms::singular_values(h.entries);
        const int streams = sol.k * static_cast<int>(paths.size());
        const double cap = wsms::capacity(h.entries, s.transmit_power, s.noise_power, streams);
        const double cap_los = wsms::capacity(*h.los_part, s.transmit_power, s.noise_power, streams);
        const int rank = wsms::numerical_rank(h.entries);
        const wsms::Aperture ap = wsms::aperture_and_rayleigh(tx, s.wavelength);

        const int shown = std::min<int>(static_cast<int>(sv.size()), streams + 2);
        if (c.json_output)
        {
            json j{{"rows", h.rows()},
                   {"cols", h.cols()},
                   {"k", sol.k},
                   {"d_s", sol.subarray_spacing},
                   {"distance", distance},
                   {"paths", paths.size()},
                   {"frobenius_norm", h.entries.norm()},
                   {"numerical_rank", rank},
                   {"capacity", cap},
                   {"los_capacity", cap_los},
                   {"aperture", ap.diagonal},
                   {"rayleigh_distance", ap.rayleigh_distance}};
            for (int i = 0; i < shown; ++i)
                j["singular_values"].push_back(sv[i]);
            for (const auto &p : paths.paths)
                j["path_gains"].push_back(std::abs(p.gain));
            std::cout << j.dump(2) << '\n';
            return exit_ok;
        }
        std::cout << "channel " << h.rows() << " x " << h.cols() << ", k = " << sol.k << ", d_s = "
                  << num(sol.subarray_spacing) << " m, D = " << num(distance) << " m, " << paths.size() << " paths\n";
        std::cout << "  |H|_F            " << num(h.entries.norm()) << '\n';
        std::cout << "  numerical rank   " << rank << '\n';
        std::cout << "  singular values ";
        for (int i = 0; i < shown; ++i)
            std::cout << ' ' << num(sv[i]);
        std::cout << '\n';
        std::cout << "  capacity         " << num(cap) << " bits/s/Hz\n";
        std::cout << "  LoS-only         " << num(cap_los) << " bits/s/Hz (" << num(100.0 * cap_los / cap) << " %)\n";
        std::cout << "  aperture         " << num(ap.diagonal) << " m, Rayleigh distance " << num(ap.rayleigh_distance)
                  << " m\n";
        return exit_ok;
    }

    int run_beamform(const Common &c, std::optional<int> k, std::optional<double> spacing, bool validate_only,
                     double precoder_scale)
    {
        const wsms::LinkScenario s = wsms::to_link_scenario(load(c));
        wsms::validate(s);
        const wsms::ConfigSolution sol = resolve_configuration(s, k, spacing);
        wsms::PipelineResult r = wsms::design_at(s, sol.k, sol.subarray_spacing, s.nominal_distance());
        if (precoder_scale != 1.0)
        {
            r.beamformers.digital_precoder *= precoder_scale;
            r.spectral_efficiency = wsms::evaluate_se(r.channel.entries, r.beamformers, s.transmit_power, s.noise_power);
        }
        const auto violations = wsms::validate_constraints(r.beamformers);

        if (c.json_output)
        {
            json j{{"k", sol.k},
                   {"d_s", sol.subarray_spacing},
                   {"streams", r.beamformers.streams},
                   {"rf_chains_tx", r.beamformers.tx_rf_chains()},
                   {"rf_chains_rx", r.beamformers.rx_rf_chains()},
                   {"spectral_efficiency", r.spectral_efficiency},
                   {"capacity", r.capacity},
                   {"violations", json::array()}};
            for (const auto &v : violations)
                j["violations"].push_back(
                    {{"kind", wsms::to_string(v.kind)}, {"matrix", v.matrix}, {"detail", v.detail}, {"measured", v.measured}});
            std::cout << j.dump(2) << '\n';
        }
        else
        {
            std::cout << "k = " << sol.k << ", d_s = " << num(sol.subarray_spacing) << " m, N_s = " << r.beamformers.streams
                      << ", RF chains " << r.beamformers.tx_rf_chains() << " / " << r.beamformers.rx_rf_chains() << '\n';
            std::cout << "SE       " << num(r.spectral_efficiency) << " bits/s/Hz\n";
            std::cout << "capacity " << num(r.capacity) << " bits/s/Hz\n";
            if (violations.empty())
                std::cout << "constraints: ok\n";
            for (const auto &v : violations)
                std::cout << "constraint violated: " << wsms::to_string(v.kind) << " on " << v.matrix << " (" << v.detail
                          << ", measured " << num(v.measured) << ")\n";
        }
        return validate_only && !violations.empty() ? exit_numerical : exit_ok;
    }

    int run_configure(const Common &c, const std::string &method, int grid)
    {
        const wsms::LinkScenario s = wsms::to_link_scenario(load(c));
        const wsms::ConfigSolution sol =
            method == "exhaustive" ? wsms::exhaustive_search(s, grid) : wsms::dlr_select(s);
        if (c.json_output)
        {
            std::cout << json{{"method", method}, {"k", sol.k}, {"d_s", sol.subarray_spacing}, {"objective_se", sol.objective_se}}.dump(2)
                      << '\n';
            return exit_ok;
        }
        std::cout << "method " << method << ": k = " << sol.k << ", d_s = " << num(sol.subarray_spacing)
                  << " m, objective SE = " << num(sol.objective_se) << " bits/s/Hz\n";
        return exit_ok;
    }

    int run_pipeline(const Common &c, bool oracle, int grid)
    {
        const wsms::LinkScenario s = wsms::to_link_scenario(load(c));
        const wsms::PipelineResult r = wsms::full_pipeline(s);
        std::optional<wsms::ConfigSolution> best;
        if (oracle)
            best = wsms::exhaustive_search(s, grid);
        const double gap = best ? 100.0 * (best->objective_se - r.solution.objective_se) / best->objective_se : 0.0;
        const auto violations = wsms::validate_constraints(r.beamformers);

        if (c.json_output)
        {
            json j{{"k", r.solution.k},
                   {"d_s", r.solution.subarray_spacing},
                   {"objective_se", r.solution.objective_se},
                   {"spectral_efficiency", r.spectral_efficiency},
                   {"capacity", r.capacity},
                   {"constraints_ok", violations.empty()}};
            if (best)
                j["oracle"] = {{"k", best->k}, {"d_s", best->subarray_spacing}, {"objective_se", best->objective_se},
                               {"gap_percent", gap}};
            std::cout << j.dump(2) << '\n';
            return exit_ok;
        }
        std::cout << "configuration: k = " << r.solution.k << ", d_s = " << num(r.solution.subarray_spacing)
                  << " m, objective SE = " << num(r.solution.objective_se) << " bits/s/Hz\n";
        std::cout << "beamforming:   SE = " << num(r.spectral_efficiency) << " bits/s/Hz, capacity = " << num(r.capacity)
                  << " bits/s/Hz, constraints " << (violations.empty() ? "ok" : "violated") << '\n';
        if (best)
            std::cout << "oracle:        k = " << best->k << ", d_s = " << num(best->subarray_spacing)
                      << " m, objective SE = " << num(best->objective_se) << " bits/s/Hz, gap = " << num(gap) << " %\n";
        return exit_ok;
    }

    int run_power(const Common &c, std::optional<int> n, std::optional<int> l, std::optional<int> k)
    {
        const wsms::ScenarioConfig cfg = load(c);
        const int antennas = n.value_or(cfg.n_tx);
        const int subarrays = k.value_or(cfg.k.value_or(4));
        const int chains = l.value_or(subarrays * 2);
        const wsms::Architecture archs[] = {wsms::Architecture::wsms, wsms::Architecture::fully_connected,
                                            wsms::Architecture::array_of_subarrays, wsms::Architecture::fully_digital};
        json j = json::array();
        if (!c.json_output)
            std::printf("%-16s %6s %6s %6s %6s %6s %6s %12s\n", "architecture", "N_PA", "N_PC", "N_PS", "N_RF", "N_DAC",
                        "N_BB", "power_mW");
        for (auto arch : archs)
        {
            const int arch_l = arch == wsms::Architecture::fully_digital ? antennas : chains;
            const wsms::DeviceCounts d = wsms::device_counts(arch, antennas, arch_l, subarrays);
            const double watts = wsms::power_consumption(arch, antennas, arch_l, subarrays, cfg.tx_power_model);
            if (c.json_output)
                j.push_back({{"architecture", wsms::to_string(arch)},
                             {"N_PA", d.pa}, {"N_PC", d.pc}, {"N_PS", d.ps}, {"N_RF", d.rf}, {"N_DAC", d.dac}, {"N_BB", d.bb},
                             {"power_W", watts}});
            else
                std::printf("%-16s %6ld %6ld %6ld %6ld %6ld %6ld %12s\n", wsms::to_string(arch).c_str(), d.pa, d.pc, d.ps,
                            d.rf, d.dac, d.bb, num(watts * 1e3).c_str());
        }
        if (c.json_output)
            std::cout << json{{"N", antennas}, {"L", chains}, {"k", subarrays}, {"architectures", j}}.dump(2) << '\n';
        return exit_ok;
    }

    int run_sweep_command(const Common &c, const std::vector<std::string> &axes, const std::string &archs,
                          std::optional<int> workers, const std::string &out_path, bool timing)
    {
        const wsms::ScenarioConfig cfg = load(c);
        wsms::SweepOptions options;
        for (const auto &a : axes)
            options.axes.push_back(wsms::parse_axis(a));
        if (!archs.empty())
            options.architectures = wsms::parse_architectures(archs);
        options.workers = workers.value_or(cfg.workers);
        options.timing = timing;
        const wsms::SweepResult result = wsms::run_sweep(cfg, options);

        if (out_path.empty())
            wsms::write_csv(std::cout, result);
        else
        {
            std::ofstream out(out_path, std::ios::binary);
            if (!out)
                throw wsms::UsageError("cannot write '" + out_path + "'");
            wsms::write_csv(out, result);
        }
        std::ostream &summary = out_path.empty() ? std::cerr : std::cout;
        if (c.json_output)
            summary << json{{"points", result.points}, {"rows", result.rows.size()}, {"failed", result.failed},
                            {"out", out_path.empty() ? json(nullptr) : json(out_path)}}.dump()
                    << '\n';
        else
            summary << "sweep: " << result.points << " points, " << result.rows.size() << " rows, " << result.failed
                    << " failed" << (out_path.empty() ? "" : ", written to " + out_path) << '\n';
        return exit_ok;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Widely-spaced multi-subarray THz link simulator"};
    app.require_subcommand(1);

    Common common;
    std::optional<int> k;
    std::optional<double> spacing;

    auto *channel = app.add_subcommand("channel", "Assemble the channel and print its statistics");
    add_common(channel, common);
    channel->add_option("--k", k, "Subarray count (default: DLR choice)");
    channel->add_option("--ds", spacing, "Subarray spacing in metres (needs --k)");

    bool validate_only = false;
    double precoder_scale = 1.0;
    auto *beamform = app.add_subcommand("beamform", "Closed-form hybrid beamforming at one configuration");
    add_common(beamform, common);
    beamform->add_option("--k", k, "Subarray count (default: DLR choice)");
    beamform->add_option("--ds", spacing, "Subarray spacing in metres (needs --k)");
    beamform->add_flag("--validate", validate_only, "Exit with status 3 when a hardware constraint is violated");
    beamform->add_option("--scale-digital-precoder", precoder_scale,
                         "Multiply P_D by this factor before validation (diagnostic)");

    std::string method = "dlr";
    int grid = 200;
    auto *configure = app.add_subcommand("configure", "Select k and d_s");
    add_common(configure, common);
    configure->add_option("--method", method, "dlr or exhaustive")->check(CLI::IsMember({"dlr", "exhaustive"}));
    configure->add_option("--grid", grid, "d_s grid points for the exhaustive search")->check(CLI::PositiveNumber);

    bool oracle = false;
    auto *pipeline = app.add_subcommand("pipeline", "Configuration followed by hybrid beamforming");
    add_common(pipeline, common);
    pipeline->add_flag("--oracle", oracle, "Also run the exhaustive search and report the gap");
    pipeline->add_option("--grid", grid, "d_s grid points for the oracle")->check(CLI::PositiveNumber);

    std::optional<int> n;
    std::optional<int> l;
    auto *power = app.add_subcommand("power", "Hardware power per architecture for one terminal");
    add_common(power, common);
    power->add_option("-N,--antennas", n, "Antennas (default: n_tx)")->check(CLI::PositiveNumber);
    power->add_option("-L,--rf-chains", l, "RF chains (default: 2k)")->check(CLI::PositiveNumber);
    power->add_option("-k,--subarrays", k, "Subarrays (default: config k or 4)")->check(CLI::PositiveNumber);

    std::vector<std::string> axes;
    std::string archs;
    std::optional<int> workers;
    std::string out_path;
    bool timing = false;
    auto *sweep = app.add_subcommand("sweep", "Parameter sweep written as CSV");
    add_common(sweep, common);
    sweep->add_option("--axis", axes, "NAME=START:STOP:STEP with NAME in rho, k, ds, N, D (repeatable)");
    sweep->add_option("--arch", archs, "Comma-separated list: wsms, planar-baseline, aosa, los-mimo");
    sweep->add_option("--workers", workers, "Concurrent workers (default: config run.workers)")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--out", out_path, "CSV output path (default: standard output)");
    sweep->add_flag("--timing", timing, "Fill the wall_ms column (makes output run-dependent)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if (*channel)
            return run_channel(common, k, spacing);
        if (*beamform)
            return run_beamform(common, k, spacing, validate_only, precoder_scale);
        if (*configure)
            return run_configure(common, method, grid);
        if (*pipeline)
            return run_pipeline(common, oracle, grid);
        if (*power)
            return run_power(common, n, l, k);
        if (*sweep)
            return run_sweep_command(common, axes, archs, workers, out_path, timing);
    }
    catch (const wsms::UsageError &e)
    {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const wsms::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const wsms::DomainError &e)
    {
        std::cerr << "invalid scenario: " << e.what() << '\n';
        return exit_config;
    }
    catch (const wsms::NumericalError &e)
    {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
    return exit_usage;
}
