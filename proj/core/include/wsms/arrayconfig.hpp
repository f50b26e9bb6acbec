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

#ifndef WSMS_ARRAYCONFIG_HPP
#define WSMS_ARRAYCONFIG_HPP

#include "wsms/beamforming.hpp"
#include "wsms/channel.hpp"
#include "wsms/geometry.hpp"

#include <optional>
#include <vector>

namespace wsms
{
    struct DistancePoint
    {
        double distance = 0.0; // [m]
        double probability = 1.0;

        bool operator==(const DistancePoint &) const = default;
    };

    // Physical link in linear units. A single distance point describes a fixed
    // link (backhaul); several points describe a distance distribution.
    struct LinkScenario
    {
        double wavelength = wavelength_from_frequency(3e11);
        int n_tx = 64;
        int n_rx = 64;
        double transmit_power = 1e-2;   // [W]
        double noise_power = 2.398832919019490e-11; // [W], -76.2 dBm
        std::vector<DistancePoint> distances{{60.0, 1.0}};
        double tx_height = 30.0;
        double rx_height = 30.0;
        double reflection_loss_db = 10.0;
        double absorption = 0.0;
        bool ground_reflection = true;
        std::vector<double> wall_offsets;
        std::optional<double> min_spacing; // overrides the no-overlap minimum when larger
        std::optional<double> max_spacing; // overrides the aperture cap when smaller
        double max_aperture = 1.0;         // [m], per terminal
        std::optional<int> k_override;
        bool include_oversized_k = false;

        // Highest-probability distance (first on ties).
        double nominal_distance() const;
        LinkGeometry geometry_at(double distance) const;
        LinkBudget budget_at(double distance) const;
        int path_count() const;
    };

    // Throws DomainError on non-positive quantities or a distribution that does not sum to 1.
    void validate(const LinkScenario &scenario);

    struct SpacingBounds
    {
        double min = 0.0;
        double max = 0.0;
    };

    SpacingBounds spacing_bounds(const LinkScenario &scenario, int k);

    // Subarray counts searched for this scenario (k_override or the feasible set).
    std::vector<int> candidate_k(const LinkScenario &scenario);

    // f(d_s) = sum_{a,b} sum_{i<l} 2 cos(2 pi d_s^2 psi_{a,b,i,l} / (lambda D)),
    // psi = (x_a - x_b)(x_l - x_i) + (z_a - z_b)(z_l - z_i), with a, b over receive and
    // i, l over transmit reference indices. Weighted sums over several distances are supported.
    class DlrObjective
    {
    public:
        DlrObjective(const std::vector<GridIndex> &tx_refs, const std::vector<GridIndex> &rx_refs, double wavelength,
                     const std::vector<DistancePoint> &distances);

        double value(double spacing) const;
        double gradient(double spacing) const;

        // Angular rate of the fastest cosine term at `spacing`, d(phase)/d(d_s).
        double max_phase_rate(double spacing) const;
        bool constant() const;

    private:
        struct Term
        {
            int psi;
            double multiplicity;
        };
        std::vector<Term> terms_;
        std::vector<std::pair<double, double>> scales_; // (2 pi / (lambda D_q), p_q)
    };

    double dlr_objective(double spacing, const std::vector<GridIndex> &tx_refs, const std::vector<GridIndex> &rx_refs,
                         double wavelength, double distance);
    double dlr_gradient(double spacing, const std::vector<GridIndex> &tx_refs, const std::vector<GridIndex> &rx_refs,
                        double wavelength, double distance);

    struct DescentOptions
    {
        int min_seeds = 64;
        int max_seeds = 20000;
        int max_iterations = 500;
        double armijo = 1e-4;
    };

    // Multistart projected gradient descent with backtracking. Seeds lie on a uniform
    // grid over the bounds (at least min_seeds, more when the objective oscillates faster
    // than four seeds per period). Ties resolve to the smallest spacing.
    double optimize_spacing(const DlrObjective &objective, const SpacingBounds &bounds,
                            const DescentOptions &options = {});

    enum class SelectionMethod
    {
        dlr,
        exhaustive
    };

    enum class CapacityRoute
    {
        factored, // singular values through the channel factorization
        dense     // SVD of the assembled N_r x N_t matrix
    };

    struct ConfigSolution
    {
        int k = 1;
        double subarray_spacing = 0.0;
        double objective_se = 0.0; // water-filled capacity with k N_p streams [bits/s/Hz]
        SelectionMethod method = SelectionMethod::dlr;
    };

    // Capacity with stream cap k N_p at one (k, d_s, D) point.
    double configuration_capacity(const LinkScenario &scenario, int k, double spacing, double distance,
                                  CapacityRoute route = CapacityRoute::factored);

    // Probability-weighted capacity over the scenario's distance points.
    double expected_capacity(const LinkScenario &scenario, int k, double spacing,
                             CapacityRoute route = CapacityRoute::factored);

    struct DlrOptions
    {
        DescentOptions descent;
        CapacityRoute route = CapacityRoute::factored;
    };

    // For each candidate k: minimize f over the spacing bounds, then re-score with the
    // water-filled capacity and keep the best (ties: smaller d_s, then smaller k).
    ConfigSolution dlr_select(const LinkScenario &scenario, const DlrOptions &options = {});

    // Same as dlr_select with the distance distribution replaced by `distribution`.
    ConfigSolution weighted_dlr(const LinkScenario &scenario, const std::vector<DistancePoint> &distribution,
                                const DlrOptions &options = {});

    // Argmax of the capacity over every candidate k and grid_points uniformly spaced d_s.
    ConfigSolution exhaustive_search(const LinkScenario &scenario, int grid_points,
                                     CapacityRoute route = CapacityRoute::dense);

    struct PipelineResult
    {
        ConfigSolution solution;
        ArrayLayout tx;
        ArrayLayout rx;
        PathSet paths;
        LinkGeometry link;
        BeamformerSet beamformers;
        ChannelMatrix channel;
        double spectral_efficiency = 0.0; // achieved by the beamformers
        double capacity = 0.0;            // k N_p stream capacity of the same channel
    };

    // Configuration then closed-form beamforming at the nominal distance.
    PipelineResult full_pipeline(const LinkScenario &scenario, const DlrOptions &options = {});

    // Hybrid design at a given configuration (no search).
    PipelineResult design_at(const LinkScenario &scenario, int k, double spacing, double distance);

    // Fully-digital capacity of the contiguous half-wavelength array (plane-wave model),
    // streams capped at N_p.
    double planar_baseline_capacity(const LinkScenario &scenario, double distance);

    // Fully-digital LoS-MIMO capacity: square grids of diagonal `aperture`, or
    // sqrt(lambda D / 2) if that is larger, LoS gain magnitude only.
    double los_mimo_capacity(const LinkScenario &scenario, double distance, double aperture);
}

#endif
