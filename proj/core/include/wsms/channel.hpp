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

#ifndef WSMS_CHANNEL_HPP
#define WSMS_CHANNEL_HPP

#include "wsms/geometry.hpp"

#include <Eigen/Core>

#include <complex>
#include <optional>
#include <vector>

namespace wsms
{
    using cdouble = std::complex<double>;

    // Azimuth phi is measured from +x in the x-y plane, elevation theta from +z.
    // Both describe the propagation direction of the wave (departing at tx,
    // arriving at rx), which keeps the planar steering phase consistent with the
    // e^{+j 2 pi d / lambda} path-length convention of the phase matrices.
    struct Direction
    {
        double azimuth = 0.0;
        double elevation = 0.0;
    };

    enum class PathKind
    {
        line_of_sight,
        ground_reflection,
        wall_reflection // vertical wall at x = wall_offset
    };

    struct PropagationPath
    {
        cdouble gain{1.0, 0.0}; // amplitude at the reference distance, absolute phase excluded
        Direction departure;
        Direction arrival;
        PathKind kind = PathKind::line_of_sight;
        double wall_offset = 0.0;
    };

    // Path 0 is the LoS path whenever one exists.
    struct PathSet
    {
        std::vector<PropagationPath> paths;

        std::size_t size() const { return paths.size(); }
        bool has_line_of_sight() const { return !paths.empty() && paths.front().kind == PathKind::line_of_sight; }
    };

    // Link geometry shared by every path: wavelength, tx-rx plane distance, mounting heights.
    struct LinkGeometry
    {
        double wavelength = 1e-3;
        double distance = 50.0;
        double tx_height = 30.0;
        double rx_height = 30.0;
    };

    enum class ChannelModel
    {
        planar,
        los_mimo,
        wsms
    };

    struct ChannelMatrix
    {
        Eigen::MatrixXcd entries; // N_r x N_t
        ChannelModel model = ChannelModel::wsms;
        std::optional<ArrayLayout> tx;
        std::optional<ArrayLayout> rx;
        std::optional<PathSet> paths;
        std::optional<Eigen::MatrixXcd> los_part;  // first path only
        std::optional<Eigen::MatrixXcd> nlos_part; // remaining paths

        Eigen::Index rows() const { return entries.rows(); }
        Eigen::Index cols() const { return entries.cols(); }
    };

    // Uniform planar array response; element (n_L, n_W) sits at row-major index n_L * cols + n_W.
    Eigen::VectorXcd steering_vector(int rows, int cols, double element_spacing, double wavelength, const Direction &dir);

    // Reference-point distance for the given path kind.
    double path_reference_distance(const PropagationPath &path, const ArrayLayout &tx, const ArrayLayout &rx,
                                   const LinkGeometry &link, int m, int n);

    // k x k matrix G[m, n] = exp(j 2 pi D_mn / lambda) between rx reference m and tx reference n.
    Eigen::MatrixXcd phase_matrix(const ArrayLayout &tx, const ArrayLayout &rx, const PropagationPath &path,
                                  const LinkGeometry &link);

    // H = sum_i alpha_i G_i kron (a_ri a_ti^H), with the LoS/NLoS split populated.
    ChannelMatrix assemble_wsms_channel(const PathSet &paths, const ArrayLayout &tx, const ArrayLayout &rx,
                                        const LinkGeometry &link);

    struct ArrayShape
    {
        int rows = 1;
        int cols = 1;
        int size() const { return rows * cols; }
    };

    // Contiguous half-wavelength arrays under the plane-wave model.
    ChannelMatrix assemble_planar_channel(const PathSet &paths, const ArrayShape &tx_shape, const ArrayShape &rx_shape,
                                          double wavelength);

    // Fully spherical single-path channel |alpha| exp(j 2 pi D_mn / lambda) between explicit positions.
    ChannelMatrix assemble_los_mimo_channel(double gain_magnitude, const Eigen::Matrix3Xd &tx_positions,
                                            const Eigen::Matrix3Xd &rx_positions, double wavelength);

    // Square n x n fully-digital grid on the x-z plane whose diagonal equals `aperture`.
    Eigen::Matrix3Xd uniform_grid_positions(int n_antennas, double aperture, double origin_y);

    // Factored form of the WSMS channel: H = (I_k kron A_r) * core * (I_k kron A_t)^H,
    // where core block (m, n) = diag_i(alpha_i G_i[m, n]) is (k N_p) x (k N_p).
    struct WsmsFactors
    {
        Eigen::MatrixXcd tx_steering; // A_t, (N_t / k) x N_p
        Eigen::MatrixXcd rx_steering; // A_r, (N_r / k) x N_p
        Eigen::MatrixXcd core;        // Lambda, (k N_p) x (k N_p)
        int k = 1;
        int n_paths = 0;
    };

    WsmsFactors factor_wsms_channel(const PathSet &paths, const ArrayLayout &tx, const ArrayLayout &rx,
                                    const LinkGeometry &link);

    struct LinkBudget
    {
        LinkGeometry link;
        double reflection_loss_db = 10.0; // power loss of each bounce
        double absorption = 0.0;          // molecular absorption coefficient [1/m]
        bool ground_reflection = true;
        std::vector<double> wall_offsets; // extra wall bounces, one path each
    };

    // LoS plus ground bounce (and optional wall bounces) with free-space amplitudes
    // lambda / (4 pi d) exp(-kappa d / 2); each bounce is scaled by -10^(-loss/20).
    PathSet path_gains_backhaul(const LinkBudget &budget);
}

#endif
