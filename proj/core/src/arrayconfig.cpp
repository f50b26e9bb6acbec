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

#include "wsms/errors.hpp"
#include "wsms/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace wsms
{
    double LinkScenario::nominal_distance() const
    {
        if (distances.empty())
            throw DomainError("scenario: no link distance");
        const auto it = std::max_element(distances.begin(), distances.end(),
                                         [](const DistancePoint &a, const DistancePoint &b) {
                                             return a.probability < b.probability;
                                         });
        return it->distance;
    }

    LinkGeometry LinkScenario::geometry_at(double distance) const
    {
        return {wavelength, distance, tx_height, rx_height};
    }

    LinkBudget LinkScenario::budget_at(double distance) const
    {
        LinkBudget b;
        b.link = geometry_at(distance);
        b.reflection_loss_db = reflection_loss_db;
        b.absorption = absorption;
        b.ground_reflection = ground_reflection;
        b.wall_offsets = wall_offsets;
        return b;
    }

    int LinkScenario::path_count() const
    {
        return 1 + (ground_reflection ? 1 : 0) + static_cast<int>(wall_offsets.size());
    }

    void validate(const LinkScenario &s)
    {
        if (!(s.wavelength > 0.0))
            throw DomainError("scenario: wavelength must be positive");
        if (s.n_tx < 1 || s.n_rx < 1)
            throw DomainError("scenario: antenna counts must be positive");
        if (!(s.transmit_power > 0.0) || !(s.noise_power > 0.0))
            throw DomainError("scenario: transmit and noise power must be positive");
        if (s.distances.empty())
            throw DomainError("scenario: at least one distance is required");
        double total = 0.0;
        for (const auto &p : s.distances)
        {
            if (!(p.distance > 0.0))
                throw DomainError("scenario: distances must be positive");
            if (!(p.probability >= 0.0))
                throw DomainError("scenario: probabilities must be non-negative");
            total += p.probability;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw DomainError("scenario: distance probabilities sum to " + std::to_string(total) + ", not 1");
        if (!(s.tx_height > 0.0) || !(s.rx_height > 0.0))
            throw DomainError("scenario: mounting heights must be positive");
        if (!(s.max_aperture > 0.0))
            throw DomainError("scenario: maximum aperture must be positive");
        if (s.absorption < 0.0)
            throw DomainError("scenario: absorption must be non-negative");
        if (s.k_override && (*s.k_override < 1 || s.n_tx % *s.k_override != 0 || s.n_rx % *s.k_override != 0))
            throw DomainError("scenario: k = " + std::to_string(*s.k_override) + " must divide both antenna counts");
    }

    SpacingBounds spacing_bounds(const LinkScenario &s, int k)
    {
        SpacingBounds b;
        b.min = std::max(min_subarray_spacing(s.n_tx, k, s.wavelength), min_subarray_spacing(s.n_rx, k, s.wavelength));
        if (k == 1)
        {
            b.max = b.min;
            return b;
        }
        b.max = std::min(max_subarray_spacing(s.n_tx, k, s.wavelength, s.max_aperture),
                         max_subarray_spacing(s.n_rx, k, s.wavelength, s.max_aperture));
        if (s.min_spacing)
            b.min = std::max(b.min, *s.min_spacing);
        if (s.max_spacing)
            b.max = std::min(b.max, *s.max_spacing);
        return b;
    }

    std::vector<int> candidate_k(const LinkScenario &s)
    {
        if (s.k_override)
            return {*s.k_override};
        return feasible_k_set(s.n_tx, s.n_rx, s.include_oversized_k);
    }

    DlrObjective::DlrObjective(const std::vector<GridIndex> &tx_refs, const std::vector<GridIndex> &rx_refs,
                               double wavelength, const std::vector<DistancePoint> &distances)
    {
        if (!(wavelength > 0.0))
            throw DomainError("dlr objective: wavelength must be positive");
        std::map<int, double> counts;
        for (const auto &a : rx_refs)
            for (const auto &b : rx_refs)
                for (std::size_t i = 0; i < tx_refs.size(); ++i)
                    for (std::size_t l = i + 1; l < tx_refs.size(); ++l)
                    {
                        const int psi = (a.x - b.x) * (tx_refs[l].x - tx_refs[i].x) +
                                        (a.z - b.z) * (tx_refs[l].z - tx_refs[i].z);
                        counts[psi] += 1.0;
                    }
        terms_.reserve(counts.size());
        for (const auto &[psi, count] : counts)
            terms_.push_back({psi, count});
        for (const auto &d : distances)
        {
            if (!(d.distance > 0.0))
                throw DomainError("dlr objective: distance must be positive");
            scales_.emplace_back(2.0 * std::numbers::pi / (wavelength * d.distance), d.probability);
        }
    }

    double DlrObjective::value(double spacing) const
    {
        const double s2 = spacing * spacing;
        double f = 0.0;
        for (const auto &[c, p] : scales_)
        {
            double fq = 0.0;
            for (const auto &t : terms_)
                fq += t.multiplicity * 2.0 * std::cos(c * s2 * t.psi);
            f += p * fq;
        }
        return f;
    }

    double DlrObjective::gradient(double spacing) const
    {
        const double s2 = spacing * spacing;
        double g = 0.0;
        for (const auto &[c, p] : scales_)
        {
            double gq = 0.0;
            for (const auto &t : terms_)
                gq += t.multiplicity * -2.0 * std::sin(c * s2 * t.psi) * 2.0 * c * spacing * t.psi;
            g += p * gq;
        }
        return g;
    }

    bool DlrObjective::constant() const
    {
        return std::all_of(terms_.begin(), terms_.end(), [](const Term &t) { return t.psi == 0; });
    }

    double DlrObjective::max_phase_rate(double spacing) const
    {
        int psi_max = 0;
        for (const auto &t : terms_)
            psi_max = std::max(psi_max, std::abs(t.psi));
        double c_max = 0.0;
        for (const auto &[c, p] : scales_)
            if (p > 0.0)
                c_max = std::max(c_max, c);
        return 2.0 * c_max * spacing * psi_max;
    }

    double dlr_objective(double spacing, const std::vector<GridIndex> &tx_refs, const std::vector<GridIndex> &rx_refs,
                         double wavelength, double distance)
    {
        return DlrObjective(tx_refs, rx_refs, wavelength, {{distance, 1.0}}).value(spacing);
    }

    double dlr_gradient(double spacing, const std::vector<GridIndex> &tx_refs, const std::vector<GridIndex> &rx_refs,
                        double wavelength, double distance)
    {
        return DlrObjective(tx_refs, rx_refs, wavelength, {{distance, 1.0}}).gradient(spacing);
    }

    namespace
    {
        bool better(double f_new, double x_new, double f_best, double x_best)
        {
            const double tol = 1e-12 * std::max(1.0, std::abs(f_best));
            if (f_new < f_best - tol)
                return true;
            return std::abs(f_new - f_best) <= tol && x_new < x_best;
        }
    }

    double optimize_spacing(const DlrObjective &objective, const SpacingBounds &bounds, const DescentOptions &options)
    {
        if (!(bounds.max >= bounds.min * (1.0 - 1e-12)) || !(bounds.min >= 0.0))
            throw DomainError("optimize_spacing: empty feasible interval [" + std::to_string(bounds.min) + ", " +
                              std::to_string(bounds.max) + "]");
        const double lo = bounds.min;
        const double hi = std::max(bounds.min, bounds.max);
        const double width = hi - lo;
        if (objective.constant() || width <= 1e-15 * std::max(1.0, hi))
            return lo;

        // at least four seeds per period of the fastest term at the upper bound
        const double period = 2.0 * std::numbers::pi / std::max(objective.max_phase_rate(hi), 1e-300);
        const double wanted = std::ceil(4.0 * width / period) + 1.0;
        const int seeds = static_cast<int>(std::clamp(wanted, static_cast<double>(options.min_seeds),
                                                      static_cast<double>(options.max_seeds)));
        const double h = width / (seeds - 1);
        const auto project = [&](double x) { return std::clamp(x, lo, hi); };

        double best_x = lo;
        double best_f = objective.value(lo);
        for (int s = 0; s < seeds; ++s)
        {
            double x = (s == seeds - 1) ? hi : lo + s * h;
            double fx = objective.value(x);
            for (int it = 0; it < options.max_iterations; ++it)
            {
                const double g = objective.gradient(x);
                if (g == 0.0)
                    break;
                double t = h / std::abs(g);
                bool moved = false;
                for (int halving = 0; halving < 60; ++halving, t *= 0.5)
                {
                    const double x_new = project(x - t * g);
                    if (x_new == x)
                        break;
                    const double f_new = objective.value(x_new);
                    if (f_new <= fx + options.armijo * g * (x_new - x))
                    {
                        moved = std::abs(x_new - x) > 1e-13 * std::max(width, 1e-300);
                        x = x_new;
                        fx = f_new;
                        break;
                    }
                }
                if (!moved)
                    break;
            }
            if (better(fx, x, best_f, best_x))
            {
                best_f = fx;
                best_x = x;
            }
        }
        return best_x;
    }

    namespace
    {
        struct Terminals
        {
            ArrayLayout tx;
            ArrayLayout rx;
        };

        Terminals layouts_for(const LinkScenario &s, int k, double spacing, double distance)
        {
            return {build_layout(s.n_tx, k, spacing, s.wavelength, 0.0),
                    build_layout(s.n_rx, k, spacing, s.wavelength, distance)};
        }

        Eigen::VectorXd channel_singular_values(const Terminals &t, const PathSet &paths,
                                                const LinkGeometry &link, CapacityRoute route)
        {
            const int np = static_cast<int>(paths.size());
            const bool factorable = t.tx.antennas_per_subarray() >= np && t.rx.antennas_per_subarray() >= np;
            if (route == CapacityRoute::factored && factorable)
                return wsms_thin_svd(factor_wsms_channel(paths, t.tx, t.rx, link)).singular_values;
            return singular_values(assemble_wsms_channel(paths, t.tx, t.rx, link).entries);
        }
    }

    double configuration_capacity(const LinkScenario &s, int k, double spacing, double distance, CapacityRoute route)
    {
        const Terminals t = layouts_for(s, k, spacing, distance);
        const LinkGeometry link = s.geometry_at(distance);
        const PathSet paths = path_gains_backhaul(s.budget_at(distance));
        const Eigen::VectorXd sv = channel_singular_values(t, paths, link, route);
        const int cap = k * static_cast<int>(paths.size());
        return capacity_from_singular_values(std::span<const double>(sv.data(), static_cast<std::size_t>(sv.size())),
                                             s.transmit_power, s.noise_power, cap);
    }

    double expected_capacity(const LinkScenario &s, int k, double spacing, CapacityRoute route)
    {
        double c = 0.0;
        for (const auto &p : s.distances)
            if (p.probability > 0.0)
                c += p.probability * configuration_capacity(s, k, spacing, p.distance, route);
        return c;
    }

    namespace
    {
        bool better_solution(double c_new, double c_best)
        {
            return c_new > c_best + 1e-12 * std::max(1.0, std::abs(c_best));
        }
    }

    ConfigSolution dlr_select(const LinkScenario &scenario, const DlrOptions &options)
    {
        validate(scenario);
        const std::vector<DistancePoint> &dist = scenario.distances;
        ConfigSolution best;
        bool have = false;
        for (int k : candidate_k(scenario))
        {
            const SpacingBounds bounds = spacing_bounds(scenario, k);
            if (k > 1 && bounds.max < bounds.min)
                continue;
            const ArrayLayout tx = build_layout(scenario.n_tx, k, bounds.min, scenario.wavelength, 0.0);
            const ArrayLayout rx = build_layout(scenario.n_rx, k, bounds.min, scenario.wavelength, 0.0);
            const DlrObjective objective(tx.ref_indices, rx.ref_indices, scenario.wavelength, dist);
            const double spacing = optimize_spacing(objective, bounds, options.descent);
            const double c = expected_capacity(scenario, k, spacing, options.route);
            if (!have || better_solution(c, best.objective_se))
            {
                best = {k, spacing, c, SelectionMethod::dlr};
                have = true;
            }
        }
        if (!have)
            throw DomainError("dlr_select: no subarray count has a feasible spacing interval");
        return best;
    }

    ConfigSolution weighted_dlr(const LinkScenario &scenario, const std::vector<DistancePoint> &distribution,
                                const DlrOptions &options)
    {
        LinkScenario s = scenario;
        s.distances = distribution;
        return dlr_select(s, options);
    }

    ConfigSolution exhaustive_search(const LinkScenario &scenario, int grid_points, CapacityRoute route)
    {
        validate(scenario);
        if (grid_points < 1)
            throw DomainError("exhaustive_search: grid needs at least one point");
        ConfigSolution best;
        best.method = SelectionMethod::exhaustive;
        bool have = false;
        for (int k : candidate_k(scenario))
        {
            const SpacingBounds bounds = spacing_bounds(scenario, k);
            if (k > 1 && bounds.max < bounds.min)
                continue;
            const int n = (k == 1 || grid_points == 1) ? 1 : grid_points;
            for (int i = 0; i < n; ++i)
            {
                const double spacing =
                    (n == 1) ? bounds.min : bounds.min + (bounds.max - bounds.min) * i / static_cast<double>(n - 1);
                const double c = expected_capacity(scenario, k, spacing, route);
                if (!have || better_solution(c, best.objective_se))
                {
                    best = {k, spacing, c, SelectionMethod::exhaustive};
                    have = true;
                }
            }
        }
        if (!have)
            throw DomainError("exhaustive_search: no subarray count has a feasible spacing interval");
        return best;
    }

    PipelineResult design_at(const LinkScenario &scenario, int k, double spacing, double distance)
    {
        PipelineResult r;
        const Terminals t = layouts_for(scenario, k, spacing, distance);
        r.tx = t.tx;
        r.rx = t.rx;
        r.link = scenario.geometry_at(distance);
        r.paths = path_gains_backhaul(scenario.budget_at(distance));
        r.solution.k = k;
        r.solution.subarray_spacing = spacing;
        r.beamformers = closed_form_wsms(r.paths, r.tx, r.rx, r.link, scenario.transmit_power, scenario.noise_power);
        r.channel = assemble_wsms_channel(r.paths, r.tx, r.rx, r.link);
        r.spectral_efficiency = evaluate_se(r.channel.entries, r.beamformers, scenario.transmit_power,
                                            scenario.noise_power);
        r.capacity = capacity(r.channel.entries, scenario.transmit_power, scenario.noise_power,
                              k * static_cast<int>(r.paths.size()));
        r.solution.objective_se = r.capacity;
        return r;
    }

    PipelineResult full_pipeline(const LinkScenario &scenario, const DlrOptions &options)
    {
        const ConfigSolution sol = dlr_select(scenario, options);
        PipelineResult r = design_at(scenario, sol.k, sol.subarray_spacing, scenario.nominal_distance());
        r.solution = sol;
        return r;
    }

    double planar_baseline_capacity(const LinkScenario &scenario, double distance)
    {
        const PathSet paths = path_gains_backhaul(scenario.budget_at(distance));
        const auto [tr, tc] = near_square_factors(scenario.n_tx);
        const auto [rr, rc] = near_square_factors(scenario.n_rx);
        const ChannelMatrix h = assemble_planar_channel(paths, {tr, tc}, {rr, rc}, scenario.wavelength);
        return capacity(h.entries, scenario.transmit_power, scenario.noise_power, static_cast<int>(paths.size()));
    }

    double los_mimo_capacity(const LinkScenario &scenario, double distance, double aperture)
    {
        const PathSet paths = path_gains_backhaul(scenario.budget_at(distance));
        const double s = std::max(aperture, near_field_aperture(scenario.wavelength, distance));
        const Eigen::Matrix3Xd tx = uniform_grid_positions(scenario.n_tx, s, 0.0);
        const Eigen::Matrix3Xd rx = uniform_grid_positions(scenario.n_rx, s, distance);
        const ChannelMatrix h = assemble_los_mimo_channel(std::abs(paths.paths.front().gain), tx, rx,
                                                          scenario.wavelength);
        return capacity(h.entries, scenario.transmit_power, scenario.noise_power);
    }
}
